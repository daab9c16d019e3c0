/**
 * Browser entry point: wires the session controller to a bare-bones DOM.
 *
 * Kept deliberately thin — everything interesting (API validation, layout,
 * rendering, apply/undo flow) lives in the testable modules.
 */

import { Client } from "./api.js";
import { WorkbenchSession } from "./session.js";

function el<T extends HTMLElement>(id: string): T {
  const node = document.getElementById(id);
  if (node === null) throw new Error(`missing #${id}`);
  return node as T;
}

async function readJsonFile(input: HTMLInputElement): Promise<unknown> {
  const file = input.files?.[0];
  if (file === undefined) throw new Error("pick a file first");
  return JSON.parse(await file.text());
}

export function boot(baseUrl: string = ""): void {
  const session = new WorkbenchSession(new Client(baseUrl || window.location.origin));

  const canvas = el<HTMLDivElement>("canvas");
  const matchesBox = el<HTMLUListElement>("matches");
  const timelineBox = el<HTMLOListElement>("timeline");
  const status = el<HTMLParagraphElement>("status");

  function redraw(highlight?: number): void {
    canvas.innerHTML = session.render(undefined, highlight);
    status.textContent = `key ${session.current.key} · depth ${session.current.depth}`;
    matchesBox.innerHTML = "";
    session.matchList.forEach((m, i) => {
      const li = document.createElement("li");
      const button = document.createElement("button");
      button.textContent = `${m.rule} @ ${m.match_index}`;
      button.addEventListener("mouseenter", () => redraw(i));
      button.addEventListener("mouseleave", () => redraw());
      button.addEventListener("click", () => {
        void session.pickAndApply(i).then((out) => {
          if (!out.ok && out.refreshed) {
            status.textContent = "matches were stale — refreshed, pick again";
          }
          redraw();
        });
      });
      li.appendChild(button);
      matchesBox.appendChild(li);
    });
    timelineBox.innerHTML = "";
    for (const key of session.timeline) {
      const li = document.createElement("li");
      li.textContent = key.slice(0, 60);
      timelineBox.appendChild(li);
    }
  }

  el<HTMLButtonElement>("load").addEventListener("click", () => {
    void (async () => {
      const grammar = await readJsonFile(el<HTMLInputElement>("grammar-file"));
      const start = await readJsonFile(el<HTMLInputElement>("start-file"));
      await session.load(grammar, start);
      redraw();
    })().catch((err) => {
      status.textContent = String(err);
    });
  });

  el<HTMLButtonElement>("undo").addEventListener("click", () => {
    void session.undo().then(() => redraw());
  });

  el<HTMLButtonElement>("export").addEventListener("click", () => {
    void session.exportTrace().then((trace) => {
      const blob = new Blob([JSON.stringify(trace)], { type: "application/json" });
      const a = document.createElement("a");
      a.href = URL.createObjectURL(blob);
      a.download = "trace.json";
      a.click();
    });
  });
}
