/** Thin typed client for the analysis service. */

import { AskResponse, ClipMeta, FramesResponse, OverlayScript, Perspective } from './types.js';

export class ApiClient {
  private base: string;
  private controller: AbortController | null = null;

  constructor(base = '') {
    this.base = base;
  }

  /** Cancel in-flight requests; used when the user switches clips. */
  cancel(): void {
    this.controller?.abort();
    this.controller = null;
  }

  private signal(): AbortSignal {
    this.controller = new AbortController();
    return this.controller.signal;
  }

  private async get<T>(path: string): Promise<T> {
    const resp = await fetch(this.base + path, { signal: this.signal() });
    if (!resp.ok) throw new Error(await errorDetail(resp));
    return (await resp.json()) as T;
  }

  listClips(): Promise<ClipMeta[]> {
    return this.get('/api/clips');
  }

  clipDetail(clipId: string): Promise<ClipMeta> {
    return this.get(`/api/clips/${encodeURIComponent(clipId)}`);
  }

  frames(clipId: string, from: number, to: number): Promise<FramesResponse> {
    return this.get(
      `/api/clips/${encodeURIComponent(clipId)}/frames?from=${from}&to=${to}`,
    );
  }

  overlay(clipId: string, perspective: Perspective): Promise<OverlayScript> {
    return this.get(
      `/api/clips/${encodeURIComponent(clipId)}/overlay?perspective=${perspective}`,
    );
  }

  async ask(clipId: string, question: string, perspective: Perspective): Promise<AskResponse> {
    const resp = await fetch(`${this.base}/api/clips/${encodeURIComponent(clipId)}/ask`, {
      method: 'POST',
      headers: { 'content-type': 'application/json' },
      body: JSON.stringify({ question, perspective }),
      signal: this.signal(),
    });
    if (!resp.ok) throw new Error(await errorDetail(resp));
    return (await resp.json()) as AskResponse;
  }
}

async function errorDetail(resp: Response): Promise<string> {
  try {
    const body = await resp.json();
    return body.detail ?? `${resp.status}`;
  } catch {
    return `${resp.status}`;
  }
}
