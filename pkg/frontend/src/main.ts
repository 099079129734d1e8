/** DOM wiring: clip picker, playback loop, ask box, panel, and canvas. */

import { ApiClient } from './api.js';
import { buildPanel } from './panel.js';
import { CourtRenderer } from './render.js';
import { buildScene } from './scene.js';
import * as st from './state.js';
import { ClipMeta, FramePayload, Perspective } from './types.js';

const api = new ApiClient();
let state = st.initialState();
let meta: ClipMeta | null = null;
let frames: FramePayload[] = [];
let lastTick = 0;

const $ = <T extends HTMLElement>(id: string) => document.getElementById(id) as T;

const canvas = $('court') as unknown as HTMLCanvasElement;
const renderer = new CourtRenderer(canvas);

function setState(next: st.ViewState): void {
  state = next;
  syncDom();
}

function syncDom(): void {
  $('summary').textContent = state.summary;
  $('toast').textContent = state.toast ?? '';
  ($('play') as HTMLButtonElement).textContent = state.playing ? 'pause' : 'play';
  ($('autopause') as HTMLInputElement).checked = state.autoPause;
  const panel = $('panel');
  panel.style.display = state.perspective === 'third' ? 'block' : 'none';
  if (state.perspective === 'third') {
    const segments = state.entries
      .map((e) => e.segment)
      .filter((s): s is NonNullable<typeof s> => s !== null);
    panel.innerHTML = buildPanel(segments, state.activeEntry)
      .map(
        (b) =>
          `<div class="block${b.active ? ' active' : ''}"><b>${b.title}</b> ${b.lines
            .map((l) => `<div>${escapeHtml(l)}</div>`)
            .join('')}</div>`,
      )
      .join('');
  }
}

function escapeHtml(s: string): string {
  return s.replace(/[&<>"]/g, (c) => ({ '&': '&amp;', '<': '&lt;', '>': '&gt;', '"': '&quot;' }[c]!));
}

function frameLoop(now: number): void {
  if (meta && frames.length) {
    const interval = 1000 / meta.fps;
    if (state.playing && now - lastTick >= interval) {
      lastTick = now;
      setState(st.tick(state));
    }
    const frame = frames[Math.min(state.playhead, frames.length - 1)];
    const nodes = buildScene(frame, st.activeEntry(state), {
      perspective: state.perspective,
      lineCursor: state.lineCursor,
      rosters: meta.rosters,
    });
    renderer.render(nodes, now);
  }
  requestAnimationFrame(frameLoop);
}

async function selectClip(clipId: string): Promise<void> {
  api.cancel();
  meta = await api.clipDetail(clipId);
  const payload = await api.frames(clipId, 0, meta.n_frames - 1);
  frames = payload.frames;
  setState(st.loadClip(state, clipId, meta.n_frames));
}

async function ask(): Promise<void> {
  if (!state.clipId) return;
  const question = ($('question') as HTMLInputElement).value.trim() || 'What happened?';
  try {
    const response = await api.ask(state.clipId, question, state.perspective);
    setState(st.askSucceeded(state, response));
  } catch (err) {
    setState(st.askFailed(state, `ask failed: ${(err as Error).message}`));
  }
}

async function init(): Promise<void> {
  const clips = await api.listClips();
  const select = $('clips') as HTMLSelectElement;
  select.innerHTML = clips
    .map((c) => `<option value="${c.clip_id}">${c.clip_id}</option>`)
    .join('');
  select.onchange = () => void selectClip(select.value);
  if (clips.length) await selectClip(clips[0].clip_id);

  $('play').onclick = () => setState(st.togglePlay(state));
  $('prev').onclick = () => setState(st.prev(state));
  $('next').onclick = () => setState(st.next(state));
  $('ask').onclick = () => void ask();
  ($('autopause') as HTMLInputElement).onchange = () => setState(st.toggleAutoPause(state));
  const perspective = $('perspective') as HTMLSelectElement;
  perspective.onchange = () => {
    setState(st.setPerspective(state, perspective.value as Perspective));
    void ask(); // never mix segment styles: reload immediately
  };
  requestAnimationFrame(frameLoop);
}

void init();
