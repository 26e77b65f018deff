/** SVG rendering of the static net and per-frame token display. */

import { RenderModel } from "./state.js";
import { FrameDocument } from "./types.js";

const SVG_NS = "http://www.w3.org/2000/svg";

export interface NetView {
  svg: SVGSVGElement;
  placeShapes: SVGCircleElement[];
  transitionShapes: SVGRectElement[];
  placeCounts: SVGTextElement[];
  transitionCounts: SVGTextElement[];
}

interface Geometry {
  glyph: number;
  viewBox: string;
}

function geometry(doc: FrameDocument): Geometry {
  const xs = [...doc.places, ...doc.transitions].map((n) => n.x);
  const ys = [...doc.places, ...doc.transitions].map((n) => n.y);
  if (xs.length === 0) {
    return { glyph: 1, viewBox: "0 0 10 10" };
  }
  const minX = Math.min(...xs);
  const maxX = Math.max(...xs);
  const minY = Math.min(...ys);
  const maxY = Math.max(...ys);
  const span = Math.max(maxX - minX, maxY - minY, 1);
  const glyph = span * 0.05;
  const pad = glyph * 4;
  return {
    glyph,
    viewBox: `${minX - pad} ${minY - pad} ${maxX - minX + 2 * pad} ${maxY - minY + 2 * pad}`,
  };
}

function svgElement<K extends keyof SVGElementTagNameMap>(
  tag: K,
  attrs: Record<string, string>,
): SVGElementTagNameMap[K] {
  const el = document.createElementNS(SVG_NS, tag);
  for (const [key, value] of Object.entries(attrs)) {
    el.setAttribute(key, value);
  }
  return el;
}

export function clearCanvas(container: HTMLElement): void {
  container.replaceChildren();
}

export function showErrorBanner(container: HTMLElement, message: string): void {
  clearCanvas(container);
  const banner = document.createElement("div");
  banner.className = "hfgt-error-banner";
  banner.textContent = message;
  container.appendChild(banner);
}

/** Draw the whole net once; token counts are filled in by applyRender. */
export function renderStatic(container: HTMLElement, doc: FrameDocument): NetView {
  clearCanvas(container);
  const geo = geometry(doc);
  const svg = svgElement("svg", {
    viewBox: geo.viewBox,
    class: "hfgt-canvas",
    preserveAspectRatio: "xMidYMid meet",
  });

  const placeAt = new Map(doc.places.map((p) => [p.index, p]));
  const transitionAt = new Map(doc.transitions.map((t) => [t.index, t]));
  for (const arc of doc.arcs) {
    const place = placeAt.get(arc.place);
    const transition = transitionAt.get(arc.transition);
    if (!place || !transition) continue;
    const [from, to] = arc.direction === "pt" ? [place, transition] : [transition, place];
    svg.appendChild(
      svgElement("line", {
        class: "hfgt-arc",
        x1: String(from.x),
        y1: String(from.y),
        x2: String(to.x),
        y2: String(to.y),
        stroke: "#888",
        "stroke-width": String(geo.glyph * 0.12),
      }),
    );
  }

  const placeShapes: SVGCircleElement[] = [];
  const placeCounts: SVGTextElement[] = [];
  for (const place of doc.places) {
    const shape = svgElement("circle", {
      class: "hfgt-place",
      "data-index": String(place.index),
      cx: String(place.x),
      cy: String(place.y),
      r: String(geo.glyph),
      fill: "#ffffff",
      stroke: "#222",
      "stroke-width": String(geo.glyph * 0.15),
    });
    const label = svgElement("text", {
      class: "hfgt-label",
      x: String(place.x),
      y: String(place.y - geo.glyph * 1.4),
      "text-anchor": "middle",
      "font-size": String(geo.glyph * 0.9),
    });
    label.textContent = `${place.index} ${place.name}`;
    const count = svgElement("text", {
      class: "hfgt-count",
      "data-kind": "place",
      "data-index": String(place.index),
      x: String(place.x),
      y: String(place.y + geo.glyph * 0.35),
      "text-anchor": "middle",
      "font-size": String(geo.glyph),
    });
    svg.append(shape, label, count);
    placeShapes.push(shape);
    placeCounts.push(count);
  }

  const transitionShapes: SVGRectElement[] = [];
  const transitionCounts: SVGTextElement[] = [];
  for (const transition of doc.transitions) {
    const side = geo.glyph * 1.6;
    const shape = svgElement("rect", {
      class: "hfgt-transition",
      "data-index": String(transition.index),
      x: String(transition.x - side / 2),
      y: String(transition.y - side / 2),
      width: String(side),
      height: String(side),
      fill: "#ffffff",
      stroke: "#222",
      "stroke-width": String(geo.glyph * 0.15),
    });
    const label = svgElement("text", {
      class: "hfgt-label",
      x: String(transition.x),
      y: String(transition.y - side * 0.75),
      "text-anchor": "middle",
      "font-size": String(geo.glyph * 0.9),
    });
    label.textContent = `${transition.index} ${transition.name}`;
    const count = svgElement("text", {
      class: "hfgt-count",
      "data-kind": "transition",
      "data-index": String(transition.index),
      x: String(transition.x),
      y: String(transition.y + geo.glyph * 0.35),
      "text-anchor": "middle",
      "font-size": String(geo.glyph),
    });
    svg.append(shape, label, count);
    transitionShapes.push(shape);
    transitionCounts.push(count);
  }

  container.appendChild(svg);
  return { svg, placeShapes, transitionShapes, placeCounts, transitionCounts };
}

/** Push one frame's filtered counts and colors into the drawn net. */
export function applyRender(view: NetView, model: RenderModel): void {
  model.placeCounts.forEach((value, i) => {
    view.placeCounts[i].textContent = model.numeric ? String(value) : "";
    view.placeShapes[i].setAttribute("fill", model.placeColors[i] ?? "#ffffff");
  });
  model.transitionCounts.forEach((value, i) => {
    view.transitionCounts[i].textContent = model.numeric ? String(value) : "";
    view.transitionShapes[i].setAttribute("fill", model.transitionColors[i] ?? "#ffffff");
  });
}

export function renderLegend(container: HTMLElement, doc: FrameDocument): void {
  container.replaceChildren();
  const sections: Array<[string, string[]]> = [
    ["Places", doc.legend.places],
    ["Transitions", doc.legend.transitions],
  ];
  for (const [title, entries] of sections) {
    const heading = document.createElement("div");
    heading.className = "hfgt-legend-title";
    heading.textContent = title;
    container.appendChild(heading);
    for (const entry of entries) {
      const row = document.createElement("div");
      row.className = "hfgt-legend-entry";
      row.textContent = entry;
      container.appendChild(row);
    }
  }
}
