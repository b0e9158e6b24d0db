/** Per-layout session history persisted in (local) storage. */

import { SessionEntry } from "./types.js";

export interface KeyValueStore {
  getItem(key: string): string | null;
  setItem(key: string, value: string): void;
  removeItem(key: string): void;
}

/** One completed session: the message records typed in one sitting. */
export type SessionHistory = SessionEntry[][];

const keyFor = (layoutId: string) => `tenkey.sessions.${layoutId}`;
const INDEX_KEY = "tenkey.layouts";

/** Layout ids that have recorded history, for multi-layout chart overlays. */
export function knownLayouts(store: KeyValueStore): string[] {
  const raw = store.getItem(INDEX_KEY);
  if (raw === null) {
    return [];
  }
  try {
    const parsed = JSON.parse(raw);
    return Array.isArray(parsed) ? parsed.map(String) : [];
  } catch {
    return [];
  }
}

export function registerLayout(store: KeyValueStore, layoutId: string): void {
  const known = knownLayouts(store);
  if (!known.includes(layoutId)) {
    known.push(layoutId);
    store.setItem(INDEX_KEY, JSON.stringify(known));
  }
}

export function loadHistory(store: KeyValueStore, layoutId: string): SessionHistory {
  const raw = store.getItem(keyFor(layoutId));
  if (raw === null) {
    return [];
  }
  try {
    const parsed = JSON.parse(raw);
    return Array.isArray(parsed) ? (parsed as SessionHistory) : [];
  } catch {
    return [];
  }
}

export function appendSession(
  store: KeyValueStore,
  layoutId: string,
  session: SessionEntry[],
): SessionHistory {
  const history = loadHistory(store, layoutId);
  history.push(session);
  store.setItem(keyFor(layoutId), JSON.stringify(history));
  registerLayout(store, layoutId);
  return history;
}

export function clearHistory(store: KeyValueStore, layoutId: string): void {
  store.removeItem(keyFor(layoutId));
}
