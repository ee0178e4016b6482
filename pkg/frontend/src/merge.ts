/** Client-side re-merge of server dots at pixel granularity.
 *
 * The server merges by year window; when the chart is narrow enough that
 * distinct dots would still overlap on screen, they are merged again here.
 */

import type { Dot } from "./types.js";

export interface PixelDot {
  xStart: number;
  xEnd: number;
  wide: boolean;
  members: string[];
  startYear: number;
  endYear: number;
}

/** Merge dots whose pixel extents (padded by radius) touch or overlap.
 * Input dots must be year-ordered, as the server emits them. */
export function mergeDotsAtPixels(
  dots: Dot[],
  xOfYear: (year: number) => number,
  radius: number,
): PixelDot[] {
  const out: PixelDot[] = [];
  for (const dot of dots) {
    const xStart = xOfYear(dot.start_year) - radius;
    const xEnd = xOfYear(dot.end_year) + radius;
    const last = out[out.length - 1];
    if (last && xStart <= last.xEnd) {
      last.xEnd = Math.max(last.xEnd, xEnd);
      last.endYear = Math.max(last.endYear, dot.end_year);
      last.members = last.members.concat(dot.members);
      last.wide = true;
    } else {
      out.push({
        xStart,
        xEnd,
        wide: dot.wide,
        members: [...dot.members],
        startYear: dot.start_year,
        endYear: dot.end_year,
      });
    }
  }
  return out;
}
