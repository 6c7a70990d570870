/**
 * Browser bootstrap: binds the DOM shell in index.html to the app wiring.
 * The session transport is a WebSocket bridge to `beadsim serve` (any
 * line-delimited proxy works; `websocat unix:/tmp/beads.sock` is enough).
 */
import { createApp, branchColumns } from "./app.js";
import { GATE_PALETTE } from "./circuitModel.js";
import { MODES, PLOTS, SCHEMES, VARIANTS } from "./controls.js";
import { Transport } from "./protocol.js";

class WebSocketTransport implements Transport {
  private handlers: ((line: string) => void)[] = [];
  private socket: WebSocket;
  private ready: Promise<void>;
  private backlog: string[] = [];

  constructor(url: string) {
    this.socket = new WebSocket(url);
    this.ready = new Promise((resolve) => {
      this.socket.addEventListener("open", () => {
        for (const line of this.backlog) this.socket.send(line);
        this.backlog = [];
        resolve();
      });
    });
    this.socket.addEventListener("message", (event) => {
      for (const line of String(event.data).split("\n")) {
        if (line.trim()) this.handlers.forEach((handler) => handler(line));
      }
    });
  }

  send(line: string): void {
    if (this.socket.readyState === WebSocket.OPEN) {
      this.socket.send(line);
    } else {
      this.backlog.push(line);
      void this.ready;
    }
  }

  onLine(handler: (line: string) => void): void {
    this.handlers.push(handler);
  }

  close(): void {
    this.socket.close();
  }
}

function fill(select: HTMLSelectElement, values: readonly string[]): void {
  for (const value of values) {
    const option = document.createElement("option");
    option.value = value;
    option.textContent = value;
    select.append(option);
  }
}

async function boot(): Promise<void> {
  const canvas = document.getElementById("viewport") as HTMLCanvasElement;
  const url = new URLSearchParams(location.search).get("backend")
    ?? `ws://${location.hostname || "localhost"}:8787`;
  const app = createApp(new WebSocketTransport(url), canvas);

  const variant = document.getElementById("variant") as HTMLSelectElement;
  const scheme = document.getElementById("scheme") as HTMLSelectElement;
  const mode = document.getElementById("mode") as HTMLSelectElement;
  const plot = document.getElementById("plot") as HTMLSelectElement;
  fill(variant, VARIANTS);
  fill(scheme, SCHEMES);
  fill(mode, MODES);
  fill(plot, PLOTS);
  for (const [element, key] of [[variant, "variant"], [scheme, "scheme"],
                                [mode, "mode"], [plot, "plot"]] as const) {
    element.addEventListener("change", async () => {
      const snapshot = await app.controls.apply({ [key]: element.value } as never);
      app.present(snapshot);
    });
  }

  const gateButtons = document.getElementById("gate-buttons")!;
  for (const entry of GATE_PALETTE) {
    const button = document.createElement("button");
    button.className = "gate-button";
    button.textContent = entry.label;
    button.addEventListener("click", async () => {
      const qubits = Array.from({ length: entry.arity }, (_, i) => i + 1);
      try {
        app.model.appendStep({
          type: "gate",
          name: entry.name,
          qubits,
          ...("parameter" in entry && entry.parameter ? { parameter: Math.PI / 2 } : {}),
        });
        await app.syncEdits();
      } catch (error) {
        button.animate([{ background: "#f88" }, { background: "" }], 400);
        console.warn(error);
      }
    });
    gateButtons.append(button);
  }

  const presets = document.getElementById("presets") as HTMLSelectElement;
  for (const preset of await app.client.listPresets()) {
    const option = document.createElement("option");
    option.value = preset.name;
    option.textContent = `${preset.name} (${preset.qubit_count}q)`;
    presets.append(option);
  }
  let stepCount = 0;
  const loadSelected = async () => {
    const info = await app.client.loadPreset(presets.value);
    stepCount = info.step_count;
    const summary = await app.client.stepTo(stepCount);
    renderBranches(summary);
    app.present(await app.client.snapshot());
  };
  document.getElementById("load-preset")!.addEventListener("click", loadSelected);

  const scrubber = document.getElementById("scrubber") as HTMLInputElement;
  const position = document.getElementById("position")!;
  scrubber.addEventListener("input", () => {
    if (stepCount === 0) return;
    const value = (Number(scrubber.value) / 1000) * stepCount;
    const step = Math.min(Math.floor(value), stepCount - 1);
    const t = value - step;
    position.textContent = `step ${step}, t = ${t.toFixed(2)}`;
    void app.scrubber.scrubTo(step, Math.min(t, 1));
  });

  const columns = document.getElementById("branch-columns")!;
  const renderBranches = (summary: Parameters<typeof branchColumns>[0]) => {
    columns.replaceChildren();
    for (const column of branchColumns(summary)) {
      const div = document.createElement("div");
      div.className = "branch-column"
        + (column.greyed ? " greyed" : "")
        + (column.selected ? " selected" : "");
      div.textContent = `${column.bits || "Σ"} ${column.percent}`;
      div.addEventListener("click", async () => {
        const snapshot = await app.branches.select(column.selected ? null : column.bits);
        app.present(snapshot);
        if (app.branches.summary) renderBranches(app.branches.summary);
      });
      columns.append(div);
    }
  };
}

if (typeof document !== "undefined") {
  void boot();
}
