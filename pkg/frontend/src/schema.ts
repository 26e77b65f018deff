/** Structural validation of frame documents before anything renders. */

import { FRAME_SCHEMA, FrameDocument } from "./types.js";

export class SchemaError extends Error {
  readonly problems: string[];

  constructor(problems: string[]) {
    super(`invalid frame document: ${problems.join("; ")}`);
    this.name = "SchemaError";
    this.problems = problems;
  }
}

function isRecord(value: unknown): value is Record<string, unknown> {
  return typeof value === "object" && value !== null && !Array.isArray(value);
}

function isNumberArray(value: unknown): value is number[] {
  return Array.isArray(value) && value.every((x) => typeof x === "number" && Number.isFinite(x));
}

function isStringArray(value: unknown): value is string[] {
  return Array.isArray(value) && value.every((x) => typeof x === "string");
}

function checkNode(value: unknown, where: string, problems: string[]): void {
  if (!isRecord(value)) {
    problems.push(`${where} is not an object`);
    return;
  }
  if (typeof value.index !== "number") problems.push(`${where}.index missing`);
  if (typeof value.name !== "string") problems.push(`${where}.name missing`);
  if (typeof value.x !== "number" || typeof value.y !== "number") {
    problems.push(`${where} has no coordinates`);
  }
}

function checkCounts(
  value: unknown,
  where: string,
  expected: number,
  operands: string[],
  problems: string[],
): void {
  if (!isRecord(value)) {
    problems.push(`${where} is not an object`);
    return;
  }
  if (!isNumberArray(value.total) || value.total.length !== expected) {
    problems.push(`${where}.total must hold ${expected} numbers`);
  }
  if (!isRecord(value.byOperand)) {
    problems.push(`${where}.byOperand missing`);
    return;
  }
  for (const operand of Object.keys(value.byOperand)) {
    if (!operands.includes(operand)) {
      problems.push(`${where}.byOperand has unknown operand '${operand}'`);
      continue;
    }
    const slice = value.byOperand[operand];
    if (!isNumberArray(slice) || slice.length !== expected) {
      problems.push(`${where}.byOperand['${operand}'] must hold ${expected} numbers`);
    }
  }
}

/** Validate an untrusted value; returns it typed or throws SchemaError. */
export function validateFrameDocument(value: unknown): FrameDocument {
  const problems: string[] = [];
  if (!isRecord(value)) {
    throw new SchemaError(["document is not an object"]);
  }
  if (value.schema !== FRAME_SCHEMA) {
    throw new SchemaError([`schema must be '${FRAME_SCHEMA}', found '${String(value.schema)}'`]);
  }
  if (typeof value.system !== "string") problems.push("system name missing");
  const operands = isStringArray(value.operands) ? value.operands : null;
  if (!operands) problems.push("operands must be a string array");

  const places = Array.isArray(value.places) ? value.places : null;
  const transitions = Array.isArray(value.transitions) ? value.transitions : null;
  if (!places) problems.push("places must be an array");
  if (!transitions) problems.push("transitions must be an array");
  places?.forEach((p, i) => checkNode(p, `places[${i}]`, problems));
  transitions?.forEach((t, i) => checkNode(t, `transitions[${i}]`, problems));

  if (!Array.isArray(value.arcs)) {
    problems.push("arcs must be an array");
  } else {
    value.arcs.forEach((arc, i) => {
      if (
        !isRecord(arc) ||
        typeof arc.place !== "number" ||
        typeof arc.transition !== "number" ||
        (arc.direction !== "pt" && arc.direction !== "tp")
      ) {
        problems.push(`arcs[${i}] malformed`);
      }
    });
  }

  const legend = value.legend;
  if (!isRecord(legend) || !isStringArray(legend.places) || !isStringArray(legend.transitions)) {
    problems.push("legend must list places and transitions");
  }

  if (!Array.isArray(value.frames) || value.frames.length === 0) {
    problems.push("frames must be a non-empty array");
  } else if (places && transitions && operands) {
    value.frames.forEach((frame, i) => {
      if (!isRecord(frame)) {
        problems.push(`frames[${i}] is not an object`);
        return;
      }
      if (typeof frame.time !== "number") problems.push(`frames[${i}].time missing`);
      checkCounts(frame.places, `frames[${i}].places`, places.length, operands, problems);
      checkCounts(frame.transitions, `frames[${i}].transitions`, transitions.length, operands, problems);
    });
  }

  if (problems.length > 0) {
    throw new SchemaError(problems);
  }
  return value as unknown as FrameDocument;
}
