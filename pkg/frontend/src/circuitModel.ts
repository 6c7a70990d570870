/**
 * Client-side circuit model: a palette of catalog gates placed on wires,
 * measurement and mix steps, classical controls, undo/redo. The model always
 * serializes to a schema-valid circuit document and emits edit patches the
 * session protocol understands.
 */
import { z } from "zod";

export const GATE_PALETTE = [
  { name: "x", arity: 1, label: "X" },
  { name: "y", arity: 1, label: "Y" },
  { name: "z", arity: 1, label: "Z" },
  { name: "h", arity: 1, label: "H" },
  { name: "sx", arity: 1, label: "√X" },
  { name: "sy", arity: 1, label: "√Y" },
  { name: "sz", arity: 1, label: "√Z" },
  { name: "sxdg", arity: 1, label: "√X⁻¹" },
  { name: "sydg", arity: 1, label: "√Y⁻¹" },
  { name: "szdg", arity: 1, label: "√Z⁻¹" },
  { name: "cycle", arity: 1, label: "C" },
  { name: "phase", arity: 1, label: "φ", parameter: true },
  { name: "cnot", arity: 2, label: "CNOT" },
  { name: "cz", arity: 2, label: "CZ" },
  { name: "cphase", arity: 2, label: "Cφ", parameter: true },
  { name: "swap", arity: 2, label: "SWAP" },
  { name: "toffoli", arity: 3, label: "CCX" },
] as const;

export type PaletteEntry = (typeof GATE_PALETTE)[number];

const ConditionSchema = z.object({ qubit: z.number().int().min(1).max(3), bit: z.union([z.literal(0), z.literal(1)]) });

export const StepSchema = z.discriminatedUnion("type", [
  z.object({
    type: z.literal("gate"),
    name: z.string(),
    qubits: z.array(z.number().int().min(1).max(3)).min(1).max(3),
    parameter: z.number().optional(),
    axis: z.tuple([z.number(), z.number(), z.number()]).optional(),
    condition: ConditionSchema.optional(),
  }),
  z.object({
    type: z.literal("measure"),
    qubit: z.number().int().min(1).max(3),
    direction: z.tuple([z.number(), z.number(), z.number()]).optional(),
  }),
  z.object({ type: z.literal("mix") }),
  z.object({
    type: z.literal("hamiltonian"),
    name: z.string().optional(),
    qubits: z.array(z.number().int().min(1).max(3)).min(1).max(3),
    terms: z.array(z.object({
      pauli: z.string().regex(/^[xyz]{1,3}$/),
      qubits: z.array(z.number().int().min(1).max(3)),
      coefficient: z.number(),
    })),
    time: z.number().optional(),
    condition: ConditionSchema.optional(),
  }),
]);
export type Step = z.infer<typeof StepSchema>;

export const CircuitDocumentSchema = z.object({
  version: z.literal(1),
  qubit_count: z.number().int().min(1).max(3),
  steps: z.array(StepSchema),
  metadata: z.record(z.string(), z.unknown()).optional(),
  initial: z.unknown().optional(),
});
export type CircuitDocument = z.infer<typeof CircuitDocumentSchema>;

export type EditPatch =
  | { op: "insert_step"; index: number; step: Step }
  | { op: "remove_step"; index: number }
  | { op: "replace_step"; index: number; step: Step }
  | { op: "set_qubit_count"; n: number };

export class PlacementError extends Error {}

interface ModelState {
  qubitCount: number;
  steps: Step[];
}

export class UICircuitModel {
  private state: ModelState;
  private undoStack: ModelState[] = [];
  private redoStack: ModelState[] = [];
  private patchLog: EditPatch[] = [];

  constructor(qubitCount = 2) {
    if (qubitCount < 1 || qubitCount > 3) {
      throw new PlacementError(`qubit count ${qubitCount} outside 1..3`);
    }
    this.state = { qubitCount, steps: [] };
  }

  get qubitCount(): number {
    return this.state.qubitCount;
  }

  get steps(): readonly Step[] {
    return this.state.steps;
  }

  /** Patches accumulated since the last drain; mirrors edit_circuit calls. */
  drainPatches(): EditPatch[] {
    const patches = this.patchLog;
    this.patchLog = [];
    return patches;
  }

  private commit(next: ModelState, patches: EditPatch[]): void {
    this.undoStack.push(this.state);
    this.redoStack = [];
    this.state = next;
    this.patchLog.push(...patches);
  }

  private measuredBefore(index: number): Set<number> {
    const measured = new Set<number>();
    for (const step of this.state.steps.slice(0, index)) {
      if (step.type === "measure") measured.add(step.qubit);
    }
    return measured;
  }

  private validatePlacement(step: Step, index: number): void {
    const n = this.state.qubitCount;
    if (step.type === "gate" || step.type === "hamiltonian") {
      const entry = step.type === "gate"
        ? GATE_PALETTE.find((g) => g.name === step.name)
        : undefined;
      if (step.type === "gate" && !entry) {
        throw new PlacementError(`gate ${step.name} is not in the palette`);
      }
      if (entry && entry.arity !== step.qubits.length) {
        throw new PlacementError(
          `${step.name} needs ${entry.arity} wire(s), got ${step.qubits.length}`);
      }
      if (entry && "parameter" in entry && entry.parameter && step.type === "gate"
          && step.parameter === undefined) {
        throw new PlacementError(`${step.name} needs an angle parameter`);
      }
      const qubits = step.qubits;
      if (new Set(qubits).size !== qubits.length) {
        throw new PlacementError("gate wires must be distinct");
      }
      if (qubits.some((q) => q < 1 || q > n)) {
        throw new PlacementError(`gate wires ${qubits} outside 1..${n}`);
      }
      if (step.condition && !this.measuredBefore(index).has(step.condition.qubit)) {
        throw new PlacementError("classical control needs an earlier measurement");
      }
    } else if (step.type === "measure") {
      if (step.qubit < 1 || step.qubit > n) {
        throw new PlacementError(`measured wire ${step.qubit} outside 1..${n}`);
      }
    } else if (step.type === "mix") {
      if (this.measuredBefore(index).size === 0) {
        throw new PlacementError("Σ needs at least one earlier measurement");
      }
    }
    // later classical controls must stay valid when editing earlier steps
    const steps = [...this.state.steps];
    steps.splice(index, 0, step);
    validateDocumentSteps(steps, n);
  }

  insertStep(index: number, step: Step): void {
    if (index < 0 || index > this.state.steps.length) {
      throw new PlacementError(`insert index ${index} out of range`);
    }
    const parsed = StepSchema.parse(step);
    this.validatePlacement(parsed, index);
    const steps = [...this.state.steps];
    steps.splice(index, 0, parsed);
    this.commit({ ...this.state, steps }, [{ op: "insert_step", index, step: parsed }]);
  }

  appendStep(step: Step): void {
    this.insertStep(this.state.steps.length, step);
  }

  removeStep(index: number): void {
    if (index < 0 || index >= this.state.steps.length) {
      throw new PlacementError(`remove index ${index} out of range`);
    }
    const steps = [...this.state.steps];
    const removed = steps.splice(index, 1);
    validateDocumentSteps(steps, this.state.qubitCount);
    void removed;
    this.commit({ ...this.state, steps }, [{ op: "remove_step", index }]);
  }

  replaceStep(index: number, step: Step): void {
    if (index < 0 || index >= this.state.steps.length) {
      throw new PlacementError(`replace index ${index} out of range`);
    }
    const parsed = StepSchema.parse(step);
    const steps = [...this.state.steps];
    steps[index] = parsed;
    validateDocumentSteps(steps, this.state.qubitCount);
    this.commit({ ...this.state, steps }, [{ op: "replace_step", index, step: parsed }]);
  }

  setQubitCount(n: number): void {
    if (n < 1 || n > 3) throw new PlacementError(`qubit count ${n} outside 1..3`);
    const offending = this.state.steps.find((step) =>
      (step.type === "gate" || step.type === "hamiltonian")
        ? step.qubits.some((q) => q > n)
        : step.type === "measure" && step.qubit > n);
    if (offending) {
      throw new PlacementError("existing steps use wires beyond the new count");
    }
    this.commit({ ...this.state, qubitCount: n }, [{ op: "set_qubit_count", n }]);
  }

  canUndo(): boolean {
    return this.undoStack.length > 0;
  }

  canRedo(): boolean {
    return this.redoStack.length > 0;
  }

  undo(): void {
    const prev = this.undoStack.pop();
    if (!prev) return;
    this.redoStack.push(this.state);
    this.state = prev;
    this.patchLog = [];
  }

  redo(): void {
    const next = this.redoStack.pop();
    if (!next) return;
    this.undoStack.push(this.state);
    this.state = next;
    this.patchLog = [];
  }

  /** Full document view; always schema-valid. */
  toDocument(): CircuitDocument {
    const document: CircuitDocument = {
      version: 1,
      qubit_count: this.state.qubitCount,
      steps: [...this.state.steps],
    };
    return CircuitDocumentSchema.parse(document);
  }

  static fromDocument(document: unknown): UICircuitModel {
    const parsed = CircuitDocumentSchema.parse(document);
    validateDocumentSteps(parsed.steps, parsed.qubit_count);
    const model = new UICircuitModel(parsed.qubit_count);
    model.state = { qubitCount: parsed.qubit_count, steps: [...parsed.steps] };
    return model;
  }
}

export function validateDocumentSteps(steps: Step[], qubitCount: number): void {
  const measured = new Set<number>();
  steps.forEach((step, i) => {
    if (step.type === "gate" || step.type === "hamiltonian") {
      if (step.qubits.some((q) => q > qubitCount)) {
        throw new PlacementError(`step ${i} uses wires beyond ${qubitCount}`);
      }
      if (step.condition && !measured.has(step.condition.qubit)) {
        throw new PlacementError(`step ${i} conditions on an unmeasured qubit`);
      }
    } else if (step.type === "measure") {
      if (step.qubit > qubitCount) {
        throw new PlacementError(`step ${i} measures a wire beyond ${qubitCount}`);
      }
      measured.add(step.qubit);
    } else if (step.type === "mix" && measured.size === 0) {
      throw new PlacementError(`step ${i}: Σ before any measurement`);
    }
  });
}
