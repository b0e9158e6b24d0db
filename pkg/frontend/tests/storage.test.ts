import { describe, expect, it } from "vitest";

import {
  KeyValueStore,
  appendSession,
  clearHistory,
  knownLayouts,
  loadHistory,
  registerLayout,
} from "../src/storage.js";
import { SessionEntry } from "../src/types.js";

function memoryStore(): KeyValueStore {
  const map = new Map<string, string>();
  return {
    getItem: (k) => map.get(k) ?? null,
    setItem: (k, v) => void map.set(k, v),
    removeItem: (k) => void map.delete(k),
  };
}

const entry: SessionEntry = {
  target: "call me when you get home ok",
  typed: "call me when you get home ok",
  elapsed_ms: 12_345,
  timestamp: "2026-08-11T12:00:00Z",
};

describe("session storage", () => {
  it("appends and reloads per-layout histories independently", () => {
    const store = memoryStore();
    appendSession(store, "pm", [entry]);
    appendSession(store, "pm", [entry, entry]);
    appendSession(store, "abc", [entry]);
    expect(loadHistory(store, "pm")).toHaveLength(2);
    expect(loadHistory(store, "pm")[1]).toHaveLength(2);
    expect(loadHistory(store, "abc")).toHaveLength(1);
  });

  it("returns an empty history for unknown layouts or corrupt payloads", () => {
    const store = memoryStore();
    expect(loadHistory(store, "nope")).toEqual([]);
    store.setItem("tenkey.sessions.bad", "{corrupt");
    expect(loadHistory(store, "bad")).toEqual([]);
  });

  it("clears histories", () => {
    const store = memoryStore();
    appendSession(store, "pm", [entry]);
    clearHistory(store, "pm");
    expect(loadHistory(store, "pm")).toEqual([]);
  });

  it("tracks which layouts have history, once each", () => {
    const store = memoryStore();
    appendSession(store, "pm", [entry]);
    appendSession(store, "pm", [entry]);
    appendSession(store, "abc", [entry]);
    registerLayout(store, "abc");
    expect(knownLayouts(store)).toEqual(["pm", "abc"]);
  });
});
