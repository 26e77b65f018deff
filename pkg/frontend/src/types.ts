/** Shape of an hfgt-frames/1 document as produced by the CLI. */

export const FRAME_SCHEMA = "hfgt-frames/1";

export interface PlaceNode {
  index: number;
  name: string;
  x: number;
  y: number;
  initTokens?: number;
}

export interface TransitionNode {
  index: number;
  name: string;
  x: number;
  y: number;
  dt?: number;
}

export interface Arc {
  place: number;
  transition: number;
  /** "pt" place→transition, "tp" transition→place */
  direction: "pt" | "tp";
}

export interface CountBlock {
  total: number[];
  byOperand: Record<string, number[]>;
}

export interface FiredEvent {
  token: number;
  transition: number;
  origin: number;
  dest: number;
  start: number;
  end: number;
}

export interface Frame {
  index: number;
  time: number;
  initial: boolean;
  places: CountBlock;
  transitions: CountBlock;
  fired: FiredEvent[];
}

export interface Legend {
  places: string[];
  transitions: string[];
}

export interface FrameDocument {
  schema: string;
  system: string;
  operands: string[];
  places: PlaceNode[];
  transitions: TransitionNode[];
  arcs: Arc[];
  legend: Legend;
  frames: Frame[];
}
