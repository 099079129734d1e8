/**
 * Playback and conversation state: a pure transition machine. The DOM layer
 * dispatches events (tick, ask results, nav clicks) and renders the result;
 * all invariants live here where tests can reach them.
 */

import { AskResponse, OverlayEntry, Perspective } from './types.js';

export interface ViewState {
  clipId: string | null;
  nFrames: number;
  playhead: number;
  playing: boolean;
  perspective: Perspective;
  autoPause: boolean;
  summary: string;
  entries: OverlayEntry[];
  /** Index into entries while a conversation is open, else -1. */
  activeEntry: number;
  /** Line within the active entry's segment, always in range. */
  lineCursor: number;
  toast: string | null;
}

export function initialState(): ViewState {
  return {
    clipId: null,
    nFrames: 0,
    playhead: 0,
    playing: false,
    perspective: 'third',
    autoPause: true,
    summary: '',
    entries: [],
    activeEntry: -1,
    lineCursor: 0,
    toast: null,
  };
}

export function loadClip(state: ViewState, clipId: string, nFrames: number): ViewState {
  return {
    ...initialState(),
    perspective: state.perspective,
    autoPause: state.autoPause,
    clipId,
    nFrames,
  };
}

function clampPlayhead(state: ViewState, frame: number): number {
  return Math.max(0, Math.min(state.nFrames - 1, frame));
}

/** One playback step; halts on pause cues when auto-pause is on. */
export function tick(state: ViewState): ViewState {
  if (!state.playing || state.nFrames === 0) return state;
  const next = state.playhead + 1;
  if (next >= state.nFrames) {
    return { ...state, playhead: state.nFrames - 1, playing: false };
  }
  if (state.autoPause) {
    const idx = state.entries.findIndex((e) => e.pause === next);
    if (idx >= 0) {
      return { ...state, playhead: next, playing: false, activeEntry: idx, lineCursor: 0 };
    }
  }
  return { ...state, playhead: next };
}

export function togglePlay(state: ViewState): ViewState {
  return { ...state, playing: !state.playing };
}

export function toggleAutoPause(state: ViewState): ViewState {
  return { ...state, autoPause: !state.autoPause };
}

function lineCount(state: ViewState): number {
  const entry = state.entries[state.activeEntry];
  return entry?.segment?.lines.length ?? 0;
}

/**
 * Advance the conversation. Past the last line the conversation closes and
 * playback resumes toward the next pause cue; the cursor never overflows.
 */
export function next(state: ViewState): ViewState {
  if (state.activeEntry < 0) return { ...state, playing: true };
  const lines = lineCount(state);
  if (state.lineCursor + 1 < lines) {
    return { ...state, lineCursor: state.lineCursor + 1 };
  }
  const hasMore = state.activeEntry + 1 < state.entries.length;
  return {
    ...state,
    activeEntry: -1,
    lineCursor: 0,
    playing: hasMore,
  };
}

/** Step back one line, re-opening the previous entry from its last line. */
export function prev(state: ViewState): ViewState {
  if (state.activeEntry >= 0 && state.lineCursor > 0) {
    return { ...state, lineCursor: state.lineCursor - 1 };
  }
  const prevIdx = state.activeEntry >= 0 ? state.activeEntry - 1 : state.entries.length - 1;
  if (prevIdx < 0) return state;
  const entry = state.entries[prevIdx];
  const lines = entry.segment?.lines.length ?? 1;
  return {
    ...state,
    playing: false,
    playhead: clampPlayhead(state, entry.pause),
    activeEntry: prevIdx,
    lineCursor: Math.max(0, lines - 1),
  };
}

/** Apply a successful /ask response: jump to the first pause cue. */
export function askSucceeded(state: ViewState, response: AskResponse): ViewState {
  const entries = response.overlay.entries;
  const first = entries.length ? entries[0] : null;
  return {
    ...state,
    summary: response.summary,
    perspective: response.perspective,
    entries,
    playing: false,
    playhead: first ? clampPlayhead({ ...state, nFrames: state.nFrames }, first.pause) : state.playhead,
    activeEntry: first ? 0 : -1,
    lineCursor: 0,
    toast: null,
  };
}

/** A failed /ask leaves everything but the toast untouched. */
export function askFailed(state: ViewState, message: string): ViewState {
  return { ...state, toast: message };
}

/**
 * Switching perspective clears the loaded explanation; the caller must
 * re-request /ask so first- and third-person segments never mix.
 */
export function setPerspective(state: ViewState, perspective: Perspective): ViewState {
  if (perspective === state.perspective) return state;
  return {
    ...state,
    perspective,
    entries: [],
    summary: '',
    activeEntry: -1,
    lineCursor: 0,
  };
}

export function activeEntry(state: ViewState): OverlayEntry | null {
  return state.activeEntry >= 0 ? state.entries[state.activeEntry] : null;
}
