import { readFileSync } from "node:fs";
import { fileURLToPath } from "node:url";

/** The cross-implementation fixtures shared with the Python suite. */
export function loadFixture(name: string): unknown {
  const path = fileURLToPath(new URL(`../../fixtures/${name}`, import.meta.url));
  return JSON.parse(readFileSync(path, "utf-8"));
}
