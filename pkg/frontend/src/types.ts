/**
 * Payload shapes served by the verification API. The dashboard never
 * computes strengths or verdicts itself; every number in these types is
 * produced by the backend solver and only formatted on this side.
 */

export type VerdictLabel = "true" | "false";
export type Polarity = "attack" | "support" | "neutral";
export type ArgumentKind = "claim" | "evidence";

export interface ArgumentPayload {
  id: string;
  text: string;
  kind: ArgumentKind;
  base_score: number;
}

export interface GraphPayload {
  arguments: ArgumentPayload[];
  attacks: Array<[string, string]>;
  supports: Array<[string, string]>;
}

export interface VerdictPayload {
  label: VerdictLabel;
  decided_by: string;
  claim_strength: number;
  converged: boolean;
}

export type EditPayload =
  | { kind: "set_base_score"; arg_id: string; base_score: number }
  | { kind: "set_polarity"; src: string; dst: string; polarity: Polarity };

export interface SessionPayload {
  session_id: string;
  claim: string | null;
  qbaf: GraphPayload;
  ids: string[];
  strengths: Record<string, number>;
  converged: boolean;
  steps: number;
  step_size: number;
  trajectory: number[][];
  verdict: VerdictPayload | null;
  tau: number;
  edits: EditPayload[];
}

export interface SessionSummaryPayload {
  session_id: string;
  claim: string | null;
  n_arguments: number;
  verdict: VerdictPayload | null;
}

export interface ContestSidePayload {
  strengths: Record<string, number>;
  label: VerdictLabel | null;
}

export interface ContestReportPayload {
  edit: EditPayload | EditPayload[];
  before: ContestSidePayload;
  after: ContestSidePayload;
  flipped: boolean;
}

export interface ApiErrorBody {
  error: string;
  message: string;
}
