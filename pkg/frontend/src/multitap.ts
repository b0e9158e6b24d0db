/** Multi-tap text entry over a keypad model.
 *
 * Repeated taps on one key cycle through its live symbols in stroke order;
 * moving to a different key commits the pending symbol. Entering two symbols
 * from the same key in a row needs an explicit next() (the cursor key), so
 * no timing is involved in the engine itself.
 */

import { KeypadModel } from "./layout.js";
import { KeyId } from "./types.js";

export interface PendingTap {
  key: KeyId;
  taps: number;
  symbol: string;
}

export class MultiTapInput {
  private model: KeypadModel;
  private committed: string[] = [];
  private pending: PendingTap | null = null;
  /** Called on the first tap of an empty buffer (session timing hook). */
  onFirstInput: (() => void) | null = null;

  constructor(model: KeypadModel) {
    this.model = model;
  }

  get pendingTap(): PendingTap | null {
    return this.pending;
  }

  /** The committed text plus whatever the pending taps currently select. */
  get text(): string {
    return this.committed.join("") + (this.pending?.symbol ?? "");
  }

  get isEmpty(): boolean {
    return this.committed.length === 0 && this.pending === null;
  }

  tap(key: KeyId): void {
    if (this.model.tapCycle(key).length === 0) {
      return; // key carries no live symbols
    }
    if (this.isEmpty && this.onFirstInput) {
      this.onFirstInput();
    }
    if (this.pending && this.pending.key === key) {
      const taps = this.pending.taps + 1;
      this.pending = { key, taps, symbol: this.model.symbolForTaps(key, taps)! };
      return;
    }
    this.commitPending();
    this.pending = { key, taps: 1, symbol: this.model.symbolForTaps(key, 1)! };
  }

  /** The cursor key: commit the pending symbol so the same key can be reused. */
  next(): void {
    this.commitPending();
  }

  /** Remove the pending taps if any, else the last committed symbol. */
  backspace(): void {
    if (this.pending) {
      this.pending = null;
    } else {
      this.committed.pop();
    }
  }

  /** Commit and return the full text (the OK button path). */
  finish(): string {
    this.commitPending();
    return this.committed.join("");
  }

  clear(): void {
    this.committed = [];
    this.pending = null;
  }

  private commitPending(): void {
    if (this.pending) {
      this.committed.push(this.pending.symbol);
      this.pending = null;
    }
  }
}
