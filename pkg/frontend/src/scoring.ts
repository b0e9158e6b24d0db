/** Session scoring; must agree with the CLI's `score-session` to 1e-9 relative. */

import { SessionEntry, SessionScore } from "./types.js";

export const TYPO_PENALTY_S = 1.0;

/** Minimal number of single-character inserts, deletes and substitutions. */
export function levenshtein(a: string, b: string): number {
  if (a.length < b.length) {
    [a, b] = [b, a];
  }
  let previous = Array.from({ length: b.length + 1 }, (_, j) => j);
  for (let i = 1; i <= a.length; i++) {
    const current = [i];
    for (let j = 1; j <= b.length; j++) {
      current.push(
        Math.min(
          previous[j] + 1,
          current[j - 1] + 1,
          previous[j - 1] + (a[i - 1] === b[j - 1] ? 0 : 1),
        ),
      );
    }
    previous = current;
  }
  return previous[b.length];
}

/** CPM over target length, with elapsed time stretched by one second per typo. */
export function scoreSession(entry: Pick<SessionEntry, "target" | "typed" | "elapsed_ms">): SessionScore {
  if (entry.elapsed_ms <= 0) {
    throw new Error("elapsed_ms must be positive");
  }
  if (entry.target.length === 0) {
    throw new Error("target text is empty");
  }
  const editDistance = levenshtein(entry.target, entry.typed);
  const effectiveSeconds = entry.elapsed_ms / 1000 + editDistance * TYPO_PENALTY_S;
  return {
    editDistance,
    effectiveSeconds,
    cpm: (60 * entry.target.length) / effectiveSeconds,
  };
}
