// Pure view-model construction: the UI is a function of the last service
// response, which keeps every state snapshot-testable without a DOM.

import { FrameResponse, Outcome, Status } from "./api.js";
import { formatValue, spokenOperation, spokenValue } from "./format.js";

export interface Banner {
  text: string;
  textPtBr: string;
  color: string;
}

export interface OutcomePanel {
  valueText: string | null;
  valueConf: number | null;
  operation: string | null;
  operationConf: number | null;
  spoken: string;
}

export interface UiFeedbackView {
  banner: Banner;
  pips: number; // mirrors the service's consecutive count, 0..5
  outcome: OutcomePanel | null; // only present once ready=true arrived
}

export const BANNERS: Record<Status, Banner> = {
  NoScreen: { text: "No screen in view", textPtBr: "Nenhuma tela encontrada", color: "#888888" },
  OutOfFocus: { text: "Out of focus, hold steady", textPtBr: "Imagem desfocada, segure firme", color: "#d97706" },
  TooFar: { text: "Move closer", textPtBr: "Aproxime a câmera", color: "#d97706" },
  TooClose: { text: "Move back", textPtBr: "Afaste a câmera", color: "#d97706" },
  OffCenter: { text: "Center the screen", textPtBr: "Centralize a tela", color: "#d97706" },
  Valid: { text: "Hold steady", textPtBr: "Segure firme", color: "#16a34a" },
};

export function spokenOutcome(outcome: Outcome): string {
  if (outcome.value === null) {
    return "não foi possível reconhecer o valor";
  }
  const op = spokenOperation(outcome.operation.label);
  const value = `valor ${spokenValue(outcome.value.cents)}`;
  return op === null ? value : `${value}, ${op}`;
}

export function outcomePanel(outcome: Outcome): OutcomePanel {
  return {
    valueText: outcome.value === null ? null : formatValue(outcome.value.cents),
    valueConf: outcome.value === null ? null : outcome.value.conf,
    operation: outcome.operation.label === "UNKNOWN" ? null : outcome.operation.label,
    operationConf: outcome.operation.label === "UNKNOWN" ? null : outcome.operation.conf,
    spoken: spokenOutcome(outcome),
  };
}

export function viewFromResponse(resp: FrameResponse): UiFeedbackView {
  return {
    banner: BANNERS[resp.status],
    pips: resp.consecutive,
    outcome: resp.ready && resp.outcome ? outcomePanel(resp.outcome) : null,
  };
}

export const RETRY_BANNER: Banner = {
  text: "Connection lost, retrying",
  textPtBr: "Conexão perdida, tentando novamente",
  color: "#dc2626",
};

export const CAMERA_DENIED_BANNER: Banner = {
  text: "Camera access is required. Allow camera use and reload.",
  textPtBr: "É necessário acesso à câmera. Permita o uso e recarregue.",
  color: "#dc2626",
};

export function retryView(pips: number): UiFeedbackView {
  return { banner: RETRY_BANNER, pips, outcome: null };
}
