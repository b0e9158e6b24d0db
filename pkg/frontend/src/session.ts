/** Timed message sessions: timing runs from the first key press to OK. */

import { scoreSession } from "./scoring.js";
import { SessionEntry, SessionFile, SessionScore } from "./types.js";

export type Clock = () => number;

export interface ScoredEntry extends SessionEntry {
  score: SessionScore;
}

export class SessionRunner {
  readonly messages: string[];
  private clock: Clock;
  private index = 0;
  private startedAt: number | null = null;
  private records: SessionEntry[] = [];

  constructor(messages: string[], clock: Clock = () => Date.now()) {
    if (messages.length === 0) {
      throw new Error("a session needs at least one message");
    }
    this.messages = messages;
    this.clock = clock;
  }

  get currentTarget(): string | null {
    return this.index < this.messages.length ? this.messages[this.index] : null;
  }

  get done(): boolean {
    return this.index >= this.messages.length;
  }

  get entries(): SessionEntry[] {
    return [...this.records];
  }

  /** Wire this to the input engine's first-tap hook. */
  markFirstInput(): void {
    if (this.startedAt === null) {
      this.startedAt = this.clock();
    }
  }

  /** OK button: close the current message. Untouched messages are discarded. */
  finishMessage(typed: string): ScoredEntry | null {
    const target = this.currentTarget;
    if (target === null) {
      return null;
    }
    if (this.startedAt === null) {
      this.index += 1; // abandoned: no keystroke was ever made
      return null;
    }
    const elapsed = Math.max(1, Math.round(this.clock() - this.startedAt));
    const entry: SessionEntry = {
      target,
      typed,
      elapsed_ms: elapsed,
      timestamp: new Date().toISOString(),
    };
    this.records.push(entry);
    this.startedAt = null;
    this.index += 1;
    return { ...entry, score: scoreSession(entry) };
  }

  /** Skip the current message without recording it. */
  abandonMessage(): void {
    this.startedAt = null;
    this.index += 1;
  }
}

export function toSessionFile(
  layoutId: string,
  subjectId: string,
  entries: SessionEntry[],
): SessionFile {
  return { layout_id: layoutId, subject_id: subjectId, sessions: entries };
}

export function parseSessionFile(doc: unknown): SessionFile {
  const file = doc as Partial<SessionFile>;
  if (!file || !Array.isArray(file.sessions)) {
    throw new Error("missing 'sessions' list");
  }
  for (const entry of file.sessions) {
    if (
      typeof entry.target !== "string" ||
      typeof entry.typed !== "string" ||
      typeof entry.elapsed_ms !== "number"
    ) {
      throw new Error(`bad session entry: ${JSON.stringify(entry)}`);
    }
  }
  return {
    layout_id: String(file.layout_id ?? ""),
    subject_id: String(file.subject_id ?? ""),
    sessions: file.sessions as SessionEntry[],
  };
}
