/** Branch explorer: outcome columns with probabilities, selection, Σ-merge. */
import { BranchSummary, SessionClient, Snapshot } from "./protocol.js";

export interface BranchColumn {
  bits: string;
  probability: number;
  percent: string;
  mixed: boolean;
  /** zero-probability branches render greyed out */
  greyed: boolean;
  selected: boolean;
}

export function branchColumns(summary: BranchSummary): BranchColumn[] {
  return summary.branches.map((branch) => ({
    bits: branch.bits,
    probability: branch.probability,
    percent: `${(branch.probability * 100).toFixed(1)}%`,
    mixed: branch.mixed,
    greyed: branch.probability <= 1e-12,
    selected: summary.selected === branch.bits,
  }));
}

export class BranchExplorer {
  summary: BranchSummary | null = null;

  constructor(private readonly client: SessionClient) {}

  refresh(summary: BranchSummary): BranchColumn[] {
    this.summary = summary;
    return branchColumns(summary);
  }

  /** Select one outcome column; null shows the probability-weighted Σ state. */
  async select(bits: string | null): Promise<Snapshot> {
    this.summary = await this.client.selectBranch(bits);
    return this.client.snapshot();
  }
}
