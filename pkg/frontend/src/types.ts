/** Shared file-format types; field names fixed by the layout/session schemas. */

export interface LayoutSymbolEntry {
  text: string;
  row: number;
  col: number;
  stroke: number;
  deprecated: boolean;
}

export interface LayoutFile {
  version: number;
  charset: string;
  symbols: LayoutSymbolEntry[];
  provenance?: {
    corpus_digest?: string | null;
    seed?: number | null;
    metric?: string | null;
    weights?: number[] | null;
    fitness?: number | null;
  };
}

export interface SessionEntry {
  target: string;
  typed: string;
  elapsed_ms: number;
  timestamp: string;
}

export interface SessionFile {
  layout_id: string;
  subject_id: string;
  sessions: SessionEntry[];
}

export interface SessionScore {
  editDistance: number;
  effectiveSeconds: number;
  cpm: number;
}

export type KeyId = `${number},${number}`;

export const keyId = (row: number, col: number): KeyId => `${row},${col}`;
