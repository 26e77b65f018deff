/** Pure viewer state: navigation, operand filtering, display flags.
 *
 * Every operation returns a new state; rendering derives counts from the
 * loaded document and never recomputes the simulation.  Invalid requests
 * (out-of-range frame, empty operand selection) leave the state unchanged.
 */

import { coolWarm } from "./colormap.js";
import { CountBlock, Frame, FrameDocument } from "./types.js";

export interface DisplayFlags {
  numeric: boolean;
  colormap: boolean;
  /** normalize the colormap over all frames instead of the current one */
  globalNormalize: boolean;
}

export interface ViewerState {
  doc: FrameDocument;
  frameIndex: number;
  selected: ReadonlySet<string>;
  flags: DisplayFlags;
  /** frames advanced per second while playing */
  speed: number;
  playing: boolean;
}

export function createViewerState(doc: FrameDocument): ViewerState {
  return {
    doc,
    frameIndex: 0,
    selected: new Set(doc.operands),
    flags: { numeric: true, colormap: false, globalNormalize: false },
    speed: 2,
    playing: false,
  };
}

export function currentFrame(state: ViewerState): Frame {
  return state.doc.frames[state.frameIndex];
}

export function step(state: ViewerState, direction: 1 | -1): ViewerState {
  const target = state.frameIndex + direction;
  if (target < 0 || target >= state.doc.frames.length) {
    return state;
  }
  return { ...state, frameIndex: target };
}

export function jumpToState(state: ViewerState, index: number): ViewerState {
  if (!Number.isInteger(index) || index < 0 || index >= state.doc.frames.length) {
    return state;
  }
  return { ...state, frameIndex: index };
}

/** Nearest frame by time; ties resolve to the earlier frame. */
export function jumpToTime(state: ViewerState, time: number): ViewerState {
  if (!Number.isFinite(time)) {
    return state;
  }
  let best = 0;
  let bestDistance = Infinity;
  state.doc.frames.forEach((frame, i) => {
    const distance = Math.abs(frame.time - time);
    if (distance < bestDistance) {
      best = i;
      bestDistance = distance;
    }
  });
  return { ...state, frameIndex: best };
}

/** Replace the operand filter; an empty selection is rejected. */
export function setOperands(state: ViewerState, operands: Iterable<string>): ViewerState {
  const known = new Set<string>();
  for (const operand of operands) {
    if (state.doc.operands.includes(operand)) {
      known.add(operand);
    }
  }
  if (known.size === 0) {
    return state;
  }
  return { ...state, selected: known };
}

export function setFlags(state: ViewerState, flags: Partial<DisplayFlags>): ViewerState {
  return { ...state, flags: { ...state.flags, ...flags } };
}

export function setSpeed(state: ViewerState, speed: number): ViewerState {
  if (!Number.isFinite(speed) || speed <= 0) {
    return state;
  }
  return { ...state, speed };
}

export function setPlaying(state: ViewerState, playing: boolean): ViewerState {
  return { ...state, playing };
}

/** Sum the selected operand slices of one count block. */
function filteredCounts(block: CountBlock, doc: FrameDocument, selected: ReadonlySet<string>): number[] {
  if (selected.size === doc.operands.length) {
    return block.total.slice();
  }
  const out = new Array<number>(block.total.length).fill(0);
  for (const operand of selected) {
    const slice = block.byOperand[operand];
    if (!slice) continue;
    slice.forEach((value, i) => {
      out[i] += value;
    });
  }
  return out;
}

export interface RenderModel {
  frame: Frame;
  placeCounts: number[];
  transitionCounts: number[];
  /** fill colors when the colormap flag is on, else null per glyph */
  placeColors: Array<string | null>;
  transitionColors: Array<string | null>;
  /** normalization ceiling used by the colormap */
  maxCount: number;
  numeric: boolean;
  colormap: boolean;
}

/** Project the current frame through the operand filter and display flags. */
export function deriveRender(state: ViewerState): RenderModel {
  const frame = currentFrame(state);
  const placeCounts = filteredCounts(frame.places, state.doc, state.selected);
  const transitionCounts = filteredCounts(frame.transitions, state.doc, state.selected);

  let maxCount = Math.max(...placeCounts, ...transitionCounts, 0);
  if (state.flags.globalNormalize) {
    for (const other of state.doc.frames) {
      const p = filteredCounts(other.places, state.doc, state.selected);
      const t = filteredCounts(other.transitions, state.doc, state.selected);
      maxCount = Math.max(maxCount, ...p, ...t);
    }
  }

  const colorize = (counts: number[]): Array<string | null> => {
    if (!state.flags.colormap) {
      return counts.map(() => null);
    }
    const ceiling = maxCount > 0 ? maxCount : 1;
    return counts.map((value) => coolWarm(value / ceiling));
  };

  return {
    frame,
    placeCounts,
    transitionCounts,
    placeColors: colorize(placeCounts),
    transitionColors: colorize(transitionCounts),
    maxCount,
    numeric: state.flags.numeric,
    colormap: state.flags.colormap,
  };
}
