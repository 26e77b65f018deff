/** Application shell: controls, document loading, playback loop. */

import { applyRender, clearCanvas, NetView, renderLegend, renderStatic, showErrorBanner } from "./render.js";
import { SchemaError, validateFrameDocument } from "./schema.js";
import {
  ViewerState,
  createViewerState,
  currentFrame,
  deriveRender,
  jumpToState,
  jumpToTime,
  setFlags,
  setOperands,
  setPlaying,
  setSpeed,
  step,
} from "./state.js";

export interface ViewerElements {
  canvas: HTMLElement;
  legend: HTMLElement;
  fileInput: HTMLInputElement;
  resetButton: HTMLButtonElement;
  previousButton: HTMLButtonElement;
  nextButton: HTMLButtonElement;
  playButton: HTMLButtonElement;
  speedInput: HTMLInputElement;
  stateInput: HTMLInputElement;
  timeInput: HTMLInputElement;
  operandSelect: HTMLSelectElement;
  numericCheckbox: HTMLInputElement;
  colormapCheckbox: HTMLInputElement;
  globalNormalizeCheckbox: HTMLInputElement;
  status: HTMLElement;
}

export interface ViewerApp {
  elements: ViewerElements;
  /** Validate and display a parsed JSON value; banners on schema errors. */
  loadDocument(value: unknown): void;
  reset(): void;
  getState(): ViewerState | null;
  /** Advance one playback tick (exposed for tests). */
  tick(): void;
}

function control<K extends keyof HTMLElementTagNameMap>(
  tag: K,
  className: string,
  parent: HTMLElement,
): HTMLElementTagNameMap[K] {
  const el = document.createElement(tag);
  el.className = className;
  parent.appendChild(el);
  return el;
}

function labelled(parent: HTMLElement, text: string, el: HTMLElement): void {
  const wrap = document.createElement("label");
  wrap.className = "hfgt-control";
  const span = document.createElement("span");
  span.textContent = text;
  wrap.append(span, el);
  parent.appendChild(wrap);
}

export function initViewer(root: HTMLElement): ViewerApp {
  root.classList.add("hfgt-viewer");
  const toolbar = control("div", "hfgt-toolbar", root);
  const canvas = control("div", "hfgt-canvas-host", root);
  const side = control("div", "hfgt-side", root);
  const legend = control("div", "hfgt-legend", side);
  const status = control("div", "hfgt-status", side);

  const fileInput = document.createElement("input");
  fileInput.type = "file";
  fileInput.accept = "application/json,.json";
  fileInput.className = "hfgt-import";
  labelled(toolbar, "Import", fileInput);

  const resetButton = control("button", "hfgt-reset", toolbar);
  resetButton.textContent = "Reset";
  const previousButton = control("button", "hfgt-previous", toolbar);
  previousButton.textContent = "Previous";
  const nextButton = control("button", "hfgt-next", toolbar);
  nextButton.textContent = "Next";
  const playButton = control("button", "hfgt-play", toolbar);
  playButton.textContent = "Play";

  const speedInput = document.createElement("input");
  speedInput.type = "number";
  speedInput.min = "0.25";
  speedInput.step = "0.25";
  speedInput.value = "2";
  speedInput.className = "hfgt-speed";
  labelled(toolbar, "Frames/s", speedInput);

  const stateInput = document.createElement("input");
  stateInput.type = "number";
  stateInput.className = "hfgt-state";
  labelled(toolbar, "System state", stateInput);

  const timeInput = document.createElement("input");
  timeInput.type = "number";
  timeInput.step = "any";
  timeInput.className = "hfgt-time";
  labelled(toolbar, "System time", timeInput);

  const operandSelect = document.createElement("select");
  operandSelect.multiple = true;
  operandSelect.className = "hfgt-operands";
  labelled(toolbar, "Operands", operandSelect);

  const numericCheckbox = document.createElement("input");
  numericCheckbox.type = "checkbox";
  numericCheckbox.checked = true;
  numericCheckbox.className = "hfgt-numeric";
  labelled(toolbar, "Numerically", numericCheckbox);

  const colormapCheckbox = document.createElement("input");
  colormapCheckbox.type = "checkbox";
  colormapCheckbox.className = "hfgt-colormap";
  labelled(toolbar, "Color map", colormapCheckbox);

  const globalNormalizeCheckbox = document.createElement("input");
  globalNormalizeCheckbox.type = "checkbox";
  globalNormalizeCheckbox.className = "hfgt-global-normalize";
  labelled(toolbar, "Normalize over all frames", globalNormalizeCheckbox);

  let state: ViewerState | null = null;
  let view: NetView | null = null;
  let timer: ReturnType<typeof setInterval> | null = null;

  function stopPlayback(): void {
    if (timer !== null) {
      clearInterval(timer);
      timer = null;
    }
    playButton.textContent = "Play";
    if (state) {
      state = setPlaying(state, false);
    }
  }

  function refresh(): void {
    if (!state || !view) return;
    applyRender(view, deriveRender(state));
    const frame = currentFrame(state);
    stateInput.value = String(state.frameIndex);
    timeInput.value = String(frame.time);
    status.textContent =
      `${state.doc.system}: state ${state.frameIndex} of ${state.doc.frames.length - 1}` +
      ` at t=${frame.time}${frame.initial ? " (initial)" : ""}`;
  }

  function update(next: ViewerState | null): void {
    if (next === null) return;
    state = next;
    refresh();
  }

  const app: ViewerApp = {
    elements: {
      canvas,
      legend,
      fileInput,
      resetButton,
      previousButton,
      nextButton,
      playButton,
      speedInput,
      stateInput,
      timeInput,
      operandSelect,
      numericCheckbox,
      colormapCheckbox,
      globalNormalizeCheckbox,
      status,
    },
    loadDocument(value: unknown): void {
      stopPlayback();
      let doc;
      try {
        doc = validateFrameDocument(value);
      } catch (error) {
        state = null;
        view = null;
        legend.replaceChildren();
        const message = error instanceof SchemaError ? error.message : String(error);
        showErrorBanner(canvas, message);
        status.textContent = "load failed";
        return;
      }
      state = createViewerState(doc);
      view = renderStatic(canvas, doc);
      renderLegend(legend, doc);
      operandSelect.replaceChildren();
      for (const operand of doc.operands) {
        const option = document.createElement("option");
        option.value = operand;
        option.textContent = operand;
        option.selected = true;
        operandSelect.appendChild(option);
      }
      numericCheckbox.checked = true;
      colormapCheckbox.checked = false;
      globalNormalizeCheckbox.checked = false;
      refresh();
    },
    reset(): void {
      stopPlayback();
      state = null;
      view = null;
      clearCanvas(canvas);
      legend.replaceChildren();
      status.textContent = "";
      operandSelect.replaceChildren();
    },
    getState(): ViewerState | null {
      return state;
    },
    tick(): void {
      if (!state) return;
      const advanced = step(state, 1);
      if (advanced === state) {
        stopPlayback();
        refresh();
        return;
      }
      update(advanced);
    },
  };

  resetButton.addEventListener("click", () => app.reset());
  previousButton.addEventListener("click", () => update(state && step(state, -1)));
  nextButton.addEventListener("click", () => update(state && step(state, 1)));
  playButton.addEventListener("click", () => {
    if (!state) return;
    if (timer !== null) {
      stopPlayback();
      return;
    }
    state = setPlaying(state, true);
    playButton.textContent = "Pause";
    timer = setInterval(() => app.tick(), 1000 / state.speed);
  });
  speedInput.addEventListener("change", () => {
    if (!state) return;
    state = setSpeed(state, Number(speedInput.value));
    if (timer !== null) {
      // restart the loop at the new cadence
      clearInterval(timer);
      timer = setInterval(() => app.tick(), 1000 / state.speed);
    }
  });
  stateInput.addEventListener("change", () => {
    update(state && jumpToState(state, Number(stateInput.value)));
  });
  timeInput.addEventListener("change", () => {
    update(state && jumpToTime(state, Number(timeInput.value)));
  });
  operandSelect.addEventListener("change", () => {
    if (!state) return;
    const chosen = Array.from(operandSelect.selectedOptions).map((o) => o.value);
    const next = setOperands(state, chosen);
    if (next === state) {
      // empty selection rejected: restore the checkboxes to the live state
      for (const option of Array.from(operandSelect.options)) {
        option.selected = state.selected.has(option.value);
      }
      return;
    }
    update(next);
  });
  numericCheckbox.addEventListener("change", () => {
    update(state && setFlags(state, { numeric: numericCheckbox.checked }));
  });
  colormapCheckbox.addEventListener("change", () => {
    update(state && setFlags(state, { colormap: colormapCheckbox.checked }));
  });
  globalNormalizeCheckbox.addEventListener("change", () => {
    update(state && setFlags(state, { globalNormalize: globalNormalizeCheckbox.checked }));
  });
  fileInput.addEventListener("change", () => {
    const file = fileInput.files?.[0];
    if (!file) return;
    file
      .text()
      .then((text) => app.loadDocument(JSON.parse(text)))
      .catch((error) => showErrorBanner(canvas, `could not read file: ${error}`));
  });

  return app;
}

/** Boot against the page DOM; ?frames=<url> loads a document immediately. */
export function boot(): void {
  const root = document.getElementById("app");
  if (!root) return;
  const app = initViewer(root);
  const params = new URLSearchParams(window.location.search);
  const url = params.get("frames");
  if (url) {
    fetch(url)
      .then((response) => response.json())
      .then((value) => app.loadDocument(value))
      .catch((error) => showErrorBanner(app.elements.canvas, `could not fetch frames: ${error}`));
  }
}

if (typeof document !== "undefined" && document.getElementById("app")) {
  boot();
}
