/** Third-person side panel: numbered commentary blocks. */

import { Segment } from './types.js';

export interface PanelBlock {
  title: string;
  lines: string[];
  anchorFrame: number;
  active: boolean;
}

export function buildPanel(segments: Segment[], activeIndex: number): PanelBlock[] {
  return segments.map((seg, i) => ({
    title: `Action ${i + 1}.`,
    lines: seg.lines.map((l) => (l.speaker === 'Narrator' ? l.text : `${l.speaker}: ${l.text}`)),
    anchorFrame: seg.anchor_frame,
    active: i === activeIndex,
  }));
}
