/** Wire types mirroring the service's published JSON schemas. */

export type Perspective = 'first' | 'third';

export interface PlayerRef {
  player_id: string;
  full_name: string;
  team: 'home' | 'away';
}

export interface ClipMeta {
  clip_id: string;
  fps: number;
  n_frames: number;
  offense_team: string;
  rosters: PlayerRef[];
  tactic?: TacticInfo | null;
}

export interface TacticInfo {
  label: string;
  display_name: string;
  k: number;
  neighbors: { label: string; distance: number }[];
}

export interface FramePayload {
  i: number;
  t: number;
  ball: [number, number];
  players: { id: string; pos: [number, number] }[];
}

export interface FramesResponse {
  clip_id: string;
  from: number;
  to: number;
  frames: FramePayload[];
}

export interface SegmentLine {
  speaker: string;
  text: string;
}

export interface Segment {
  action_index: number;
  anchor_frame: number;
  lines: SegmentLine[];
}

export type PrimitiveType =
  | 'circle_marker'
  | 'ground_arrow'
  | 'path_preview'
  | 'area_highlight'
  | 'screen_wall'
  | 'pause_cue'
  | 'chat_anchor';

export interface Primitive {
  type: PrimitiveType;
  frame_start: number;
  frame_end: number;
  player?: string;
  role?: 'sender' | 'receiver';
  rotating?: boolean;
  color?: string;
  from?: [number, number];
  to?: [number, number];
  phase?: 'before' | 'after';
  points?: [number, number][];
  region?: string;
  pos?: [number, number];
  normal?: [number, number];
  frame?: number;
  placement?: 'above' | 'below';
}

export interface OverlayEntry {
  action: number;
  pause: number;
  primitives: Primitive[];
  segment: Segment | null;
}

export interface OverlayScript {
  clip_id: string;
  perspective: Perspective;
  entries: OverlayEntry[];
}

export interface AskResponse {
  summary: string;
  perspective: Perspective;
  segments: Segment[];
  overlay: OverlayScript;
  tactic: TacticInfo | null;
}

/** Court constants (feet); the region polygons match the engine's table. */
export const COURT_LENGTH = 94;
export const COURT_WIDTH = 50;

export const REGION_POLYGONS: Record<string, [number, number][][]> = {
  Key: [rect(0, 17, 19, 33)],
  LeftLowPost: [rect(0, 33, 13, 42)],
  RightLowPost: [rect(0, 8, 13, 17)],
  HighPost: [rect(13, 33, 19, 42), rect(13, 8, 19, 17)],
  LeftCorner: [rect(0, 42, 14, 50)],
  RightCorner: [rect(0, 0, 14, 8)],
  LeftWing: [
    [
      [19, 33],
      [31, 33],
      [31, 50],
      [14, 50],
      [14, 42],
      [19, 42],
    ],
  ],
  RightWing: [
    [
      [14, 0],
      [31, 0],
      [31, 17],
      [19, 17],
      [19, 8],
      [14, 8],
    ],
  ],
  TopOfKey: [rect(19, 17, 31, 33)],
  Backcourt: [rect(31, 0, 47, 50)],
};

function rect(x0: number, y0: number, x1: number, y1: number): [number, number][] {
  return [
    [x0, y0],
    [x1, y0],
    [x1, y1],
    [x0, y1],
  ];
}
