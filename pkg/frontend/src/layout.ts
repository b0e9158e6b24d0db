/** Layout-file parsing and the keypad model the trainer renders and types on. */

import { KeyId, LayoutFile, LayoutSymbolEntry, keyId } from "./types.js";

const LETTERS = "abcdefghijklmnopqrstuvwxyz";
const FORBIDDEN_KEYS = new Set<KeyId>(["4,1", "4,3"]);

export class LayoutError extends Error {}

export interface KeyEntry {
  stroke: number;
  text: string;
  deprecated: boolean;
}

export class KeypadModel {
  /** Stroke-ordered symbol entries per key; strokes may have gaps (vacancies). */
  readonly keys: Map<KeyId, KeyEntry[]>;
  readonly layoutId: string;
  readonly symbols: LayoutSymbolEntry[];

  constructor(symbols: LayoutSymbolEntry[], layoutId: string) {
    this.symbols = symbols;
    this.layoutId = layoutId;
    this.keys = new Map();
    for (const entry of symbols) {
      const id = keyId(entry.row, entry.col);
      const list = this.keys.get(id) ?? [];
      list.push({ stroke: entry.stroke, text: entry.text, deprecated: entry.deprecated });
      this.keys.set(id, list);
    }
    for (const list of this.keys.values()) {
      list.sort((a, b) => a.stroke - b.stroke);
    }
  }

  /** Entries selectable by tapping: stroke order with deprecated ones excluded. */
  tapCycle(key: KeyId): KeyEntry[] {
    return (this.keys.get(key) ?? []).filter((e) => !e.deprecated);
  }

  /** The symbol emitted by the n-th consecutive tap (1-based, wrapping). */
  symbolForTaps(key: KeyId, taps: number): string | null {
    const cycle = this.tapCycle(key);
    if (cycle.length === 0 || taps < 1) {
      return null;
    }
    return cycle[(taps - 1) % cycle.length].text;
  }
}

function checkSymbolEntry(entry: unknown): LayoutSymbolEntry {
  const e = entry as Partial<LayoutSymbolEntry>;
  if (
    typeof e.text !== "string" ||
    typeof e.row !== "number" ||
    typeof e.col !== "number" ||
    typeof e.stroke !== "number"
  ) {
    throw new LayoutError(`bad symbol entry: ${JSON.stringify(entry)}`);
  }
  return {
    text: e.text,
    row: e.row,
    col: e.col,
    stroke: e.stroke,
    deprecated: Boolean(e.deprecated),
  };
}

/** Parse and validate a layout file against the keypad schema. */
export function parseLayoutFile(doc: unknown, layoutId = "layout"): KeypadModel {
  if (typeof doc !== "object" || doc === null || !Array.isArray((doc as LayoutFile).symbols)) {
    throw new LayoutError("missing 'symbols' section");
  }
  const file = doc as LayoutFile;
  if (file.version !== 1) {
    throw new LayoutError(`unsupported layout file version: ${file.version}`);
  }
  const symbols = file.symbols.map(checkSymbolEntry);

  const seenSlots = new Set<string>();
  const seenText = new Set<string>();
  let multigrams = 0;
  for (const s of symbols) {
    if (s.row < 1 || s.row > 4 || s.col < 1 || s.col > 3 || s.stroke < 1 || s.stroke > 4) {
      throw new LayoutError(`slot out of range for '${s.text}'`);
    }
    if (FORBIDDEN_KEYS.has(keyId(s.row, s.col))) {
      throw new LayoutError(`forbidden key (${s.row},${s.col}) used by '${s.text}'`);
    }
    const slot = `${s.row},${s.col},${s.stroke}`;
    if (seenSlots.has(slot)) {
      throw new LayoutError(`duplicate slot ${slot}`);
    }
    seenSlots.add(slot);
    if (seenText.has(s.text)) {
      throw new LayoutError(`symbol '${s.text}' listed twice`);
    }
    seenText.add(s.text);
    if (s.text.length === 1) {
      if (!LETTERS.includes(s.text)) {
        throw new LayoutError(`single-character symbol '${s.text}' is not a letter`);
      }
    } else if (s.text.length < 2 || s.text.length > 3) {
      throw new LayoutError(`symbol '${s.text}' has impossible length`);
    } else {
      multigrams += 1;
    }
  }
  for (const letter of LETTERS) {
    if (!seenText.has(letter)) {
      throw new LayoutError(`missing letter '${letter}'`);
    }
  }
  if (multigrams !== 0 && multigrams !== 14) {
    throw new LayoutError(`expected 0 or 14 multigrams, found ${multigrams}`);
  }
  return new KeypadModel(symbols, layoutId);
}
