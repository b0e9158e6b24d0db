/** Browser wiring: load a layout file, type timed messages, chart progress. */

import { buildSeries, renderChartSvg } from "./chart.js";
import { KeypadModel, LayoutError, parseLayoutFile } from "./layout.js";
import { MultiTapInput } from "./multitap.js";
import { SessionRunner, toSessionFile } from "./session.js";
import { appendSession, knownLayouts, loadHistory } from "./storage.js";
import { keyId } from "./types.js";

const MESSAGE_POOL = [
  "have a nice day :-)",
  "omg.. take more than a month..",
  "heyhey i got a msg from her!!",
  "see you at nine then",
  "the train is leaving now hurry up",
  "that was the best game ever",
  "call me when you get home ok",
  "running late again sorry",
  "what do you want for dinner tonight",
  "the meeting moved to ten",
];
const MESSAGES_PER_SESSION = 5;

const KEY_LABELS: Record<string, string> = { "4,1": "*", "4,3": "#" };

interface AppState {
  model: KeypadModel | null;
  input: MultiTapInput | null;
  runner: SessionRunner | null;
  subjectId: string;
}

const state: AppState = { model: null, input: null, runner: null, subjectId: "subject" };

function el<T extends HTMLElement>(id: string): T {
  const node = document.getElementById(id);
  if (!node) {
    throw new Error(`missing element #${id}`);
  }
  return node as T;
}

function banner(text: string, isError = false): void {
  const box = el<HTMLDivElement>("banner");
  box.textContent = text;
  box.className = isError ? "banner error" : "banner";
}

function renderKeypad(): void {
  const model = state.model;
  const grid = el<HTMLDivElement>("keypad");
  grid.innerHTML = "";
  for (let row = 1; row <= 4; row++) {
    for (let col = 1; col <= 3; col++) {
      const id = keyId(row, col);
      const button = document.createElement("button");
      button.className = "key";
      if (KEY_LABELS[id]) {
        button.disabled = true;
        button.textContent = KEY_LABELS[id];
      } else {
        const entries = model?.keys.get(id) ?? [];
        for (const entry of entries) {
          const span = document.createElement("span");
          span.textContent = entry.text;
          span.className = entry.deprecated ? "sym deprecated" : "sym";
          span.title = entry.deprecated
            ? `${entry.text} (deprecated: typing the letters is no slower)`
            : entry.text;
          button.appendChild(span);
        }
        button.addEventListener("click", () => {
          state.input?.tap(id);
          refreshTyped();
        });
      }
      grid.appendChild(button);
    }
  }
}

function refreshTyped(): void {
  el<HTMLDivElement>("typed").textContent = state.input?.text ?? "";
}

function refreshTarget(): void {
  const target = state.runner?.currentTarget;
  el<HTMLDivElement>("target").textContent =
    target ?? "session complete - export or start another";
}

const SERIES_COLORS = ["#c0392b", "#2980b9", "#27ae60", "#8e44ad"];

function refreshChart(): void {
  // Overlay every layout with recorded history; the loaded one draws first.
  const ids = knownLayouts(localStorage);
  const current = state.model?.layoutId;
  if (current && !ids.includes(current)) {
    ids.unshift(current);
  }
  ids.sort((a, b) => (a === current ? -1 : b === current ? 1 : 0));
  const series = ids.map((id, i) =>
    buildSeries(id, SERIES_COLORS[i % SERIES_COLORS.length], loadHistory(localStorage, id)),
  );
  el<HTMLDivElement>("chart").innerHTML = renderChartSvg(series);
}

function startSession(): void {
  if (!state.model) {
    banner("load a layout file first", true);
    return;
  }
  const pool = [...MESSAGE_POOL].sort(() => Math.random() - 0.5);
  state.runner = new SessionRunner(pool.slice(0, MESSAGES_PER_SESSION));
  state.input = new MultiTapInput(state.model);
  state.input.onFirstInput = () => state.runner?.markFirstInput();
  banner("session started: type the message, then press OK");
  renderKeypad();
  refreshTarget();
  refreshTyped();
}

function pressOk(): void {
  const { runner, input, model } = state;
  if (!runner || !input || !model) {
    return;
  }
  const scored = runner.finishMessage(input.finish());
  input.clear();
  if (scored) {
    banner(`recorded: ${scored.score.cpm.toFixed(1)} CPM, ${scored.score.editDistance} typos`);
  } else {
    banner("message skipped (nothing typed)");
  }
  if (runner.done) {
    appendSession(localStorage, model.layoutId, runner.entries);
    banner(`session saved: ${runner.entries.length} messages`);
    refreshChart();
  }
  refreshTarget();
  refreshTyped();
}

function exportSessions(): void {
  const model = state.model;
  if (!model) {
    return;
  }
  const history = loadHistory(localStorage, model.layoutId);
  const file = toSessionFile(model.layoutId, state.subjectId, history.flat());
  const blob = new Blob([JSON.stringify(file, null, 2)], { type: "application/json" });
  const link = document.createElement("a");
  link.href = URL.createObjectURL(blob);
  link.download = `${model.layoutId}-sessions.json`;
  link.click();
  URL.revokeObjectURL(link.href);
}

async function onLayoutChosen(event: Event): Promise<void> {
  const fileInput = event.target as HTMLInputElement;
  const file = fileInput.files?.[0];
  if (!file) {
    return;
  }
  try {
    const doc = JSON.parse(await file.text());
    state.model = parseLayoutFile(doc, file.name.replace(/\.json$/, ""));
    state.runner = null;
    state.input = null;
    banner(`loaded ${state.model.layoutId}: ${state.model.symbols.length} symbols`);
    renderKeypad();
    refreshChart();
    refreshTarget();
  } catch (err) {
    state.model = null;
    banner(err instanceof LayoutError ? `layout rejected: ${err.message}` : String(err), true);
  }
}

export function mount(): void {
  el<HTMLInputElement>("layout-file").addEventListener("change", onLayoutChosen);
  el<HTMLButtonElement>("start").addEventListener("click", startSession);
  el<HTMLButtonElement>("ok").addEventListener("click", pressOk);
  el<HTMLButtonElement>("next").addEventListener("click", () => {
    state.input?.next();
    refreshTyped();
  });
  el<HTMLButtonElement>("backspace").addEventListener("click", () => {
    state.input?.backspace();
    refreshTyped();
  });
  el<HTMLButtonElement>("export").addEventListener("click", exportSessions);
  el<HTMLInputElement>("subject").addEventListener("change", (e) => {
    state.subjectId = (e.target as HTMLInputElement).value || "subject";
  });
  renderKeypad();
  refreshChart();
}

if (typeof document !== "undefined" && document.readyState !== "loading") {
  mount();
} else if (typeof document !== "undefined") {
  document.addEventListener("DOMContentLoaded", mount);
}
