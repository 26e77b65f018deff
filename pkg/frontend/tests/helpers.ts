import { readFileSync } from "node:fs";
import { resolve } from "node:path";

import { FrameDocument } from "../src/types.js";

// resolve from the package root: import.meta.url is rewritten under jsdom
export function loadFixture(name: string): FrameDocument {
  const path = resolve(process.cwd(), "tests", "fixtures", name);
  return JSON.parse(readFileSync(path, "utf-8")) as FrameDocument;
}

export const DESK3 = "desk3-frames.json";
export const TWO_OPERAND = "two-operand-frames.json";
