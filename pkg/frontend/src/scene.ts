/**
 * Pure scene-graph construction: one tracked frame plus the active overlay
 * entry become a flat list of drawable nodes. The canvas renderer consumes
 * the nodes; tests assert on them directly.
 */

import {
  FramePayload,
  OverlayEntry,
  Perspective,
  PlayerRef,
  REGION_POLYGONS,
} from './types.js';

export type SceneNode =
  | { kind: 'court' }
  | { kind: 'player'; id: string; x: number; y: number; team: 'home' | 'away' }
  | { kind: 'ball'; x: number; y: number }
  | { kind: 'circle'; player: string; x: number; y: number; role: string; color: string; rotating: boolean }
  | { kind: 'arrow'; from: [number, number]; to: [number, number]; color: string }
  | { kind: 'path'; points: [number, number][]; dashed: boolean }
  | { kind: 'area'; polygons: [number, number][][]; region: string }
  | { kind: 'wall'; x: number; y: number; nx: number; ny: number }
  | { kind: 'bubble'; player: string; x: number; y: number; placement: 'above' | 'below'; speaker: string; text: string };

export interface SceneOptions {
  perspective: Perspective;
  /** Index of the dialogue line currently shown (first-person only). */
  lineCursor: number;
  rosters: PlayerRef[];
}

export function buildScene(
  frame: FramePayload,
  entry: OverlayEntry | null,
  opts: SceneOptions,
): SceneNode[] {
  const teamOf = new Map(opts.rosters.map((p) => [p.player_id, p.team]));
  const positions = new Map(frame.players.map((p) => [p.id, p.pos]));
  const nodes: SceneNode[] = [{ kind: 'court' }];

  for (const p of frame.players) {
    nodes.push({
      kind: 'player',
      id: p.id,
      x: p.pos[0],
      y: p.pos[1],
      team: teamOf.get(p.id) ?? 'home',
    });
  }
  nodes.push({ kind: 'ball', x: frame.ball[0], y: frame.ball[1] });
  if (!entry) return nodes;

  const anchors = entry.primitives.filter((p) => p.type === 'chat_anchor');
  for (const prim of entry.primitives) {
    if (frame.i < prim.frame_start || frame.i > prim.frame_end) {
      if (prim.type !== 'chat_anchor') continue;
    }
    switch (prim.type) {
      case 'circle_marker': {
        const pos = positions.get(prim.player!);
        if (pos) {
          nodes.push({
            kind: 'circle',
            player: prim.player!,
            x: pos[0],
            y: pos[1],
            role: prim.role ?? 'sender',
            color: prim.color ?? '#ffffff',
            rotating: prim.rotating ?? false,
          });
        }
        break;
      }
      case 'ground_arrow':
        nodes.push({ kind: 'arrow', from: prim.from!, to: prim.to!, color: prim.color ?? '#fff' });
        break;
      case 'path_preview':
        nodes.push({ kind: 'path', points: prim.points ?? [], dashed: prim.phase === 'before' });
        break;
      case 'area_highlight':
        nodes.push({
          kind: 'area',
          polygons: REGION_POLYGONS[prim.region!] ?? [],
          region: prim.region!,
        });
        break;
      case 'screen_wall':
        nodes.push({
          kind: 'wall',
          x: prim.pos![0],
          y: prim.pos![1],
          nx: prim.normal![0],
          ny: prim.normal![1],
        });
        break;
      default:
        break; // pause cues gate playback, chat anchors are handled below
    }
  }

  // first person: the active dialogue line rides on its speaker
  if (opts.perspective === 'first' && entry.segment) {
    const line = entry.segment.lines[opts.lineCursor];
    const anchor = anchors[opts.lineCursor];
    if (line && anchor) {
      const pos = positions.get(anchor.player!);
      if (pos) {
        nodes.push({
          kind: 'bubble',
          player: anchor.player!,
          x: pos[0],
          y: pos[1],
          placement: anchor.placement ?? 'above',
          speaker: line.speaker,
          text: line.text,
        });
      }
    }
  }
  return nodes;
}

export function countByKind(nodes: SceneNode[]): Record<string, number> {
  const counts: Record<string, number> = {};
  for (const n of nodes) counts[n.kind] = (counts[n.kind] ?? 0) + 1;
  return counts;
}
