import { describe, expect, it } from "vitest";

import { FrameResponse, Status } from "../src/api";
import { spokenOutcome, viewFromResponse } from "../src/view";

const STATUSES: Status[] = [
  "NoScreen", "OutOfFocus", "TooFar", "TooClose", "OffCenter", "Valid",
];

function resp(overrides: Partial<FrameResponse>): FrameResponse {
  return { status: "Valid", consecutive: 0, ready: false, ...overrides };
}

describe("viewFromResponse", () => {
  it("renders a stable view per status", () => {
    const views = Object.fromEntries(
      STATUSES.map((status) => [status, viewFromResponse(resp({ status }))]));
    expect(views).toMatchSnapshot();
  });

  it("mirrors the consecutive count as pips", () => {
    for (const consecutive of [0, 1, 2, 3, 4, 5]) {
      expect(viewFromResponse(resp({ consecutive })).pips).toBe(consecutive);
    }
  });

  it("maps TooFar to the move-closer banner with reset pips", () => {
    const view = viewFromResponse(resp({ status: "TooFar", consecutive: 0 }));
    expect(view.banner.text).toBe("Move closer");
    expect(view.pips).toBe(0);
    expect(view.outcome).toBeNull();
  });

  it("shows the outcome panel only when ready", () => {
    const outcome = {
      value: { cents: 12345, conf: 98.1 },
      operation: { label: "CREDITO", conf: 100 },
      regions_examined: 3,
    };
    const notReady = viewFromResponse(resp({ outcome }));
    expect(notReady.outcome).toBeNull();
    const ready = viewFromResponse(resp({ ready: true, outcome }));
    expect(ready.outcome).not.toBeNull();
    expect(ready.outcome!.valueText).toBe("R$ 123,45");
    expect(ready.outcome!.operation).toBe("CREDITO");
    expect(ready.outcome!.spoken).toBe(
      "valor cento e vinte e três reais e quarenta e cinco centavos, crédito");
  });

  it("hides an unknown operation from the panel", () => {
    const outcome = {
      value: { cents: 500, conf: 90 },
      operation: { label: "UNKNOWN", conf: 0 },
      regions_examined: 1,
    };
    const view = viewFromResponse(resp({ ready: true, outcome }));
    expect(view.outcome!.operation).toBeNull();
    expect(view.outcome!.spoken).toBe("valor cinco reais");
  });
});

describe("spokenOutcome", () => {
  it("announces an unrecognized value", () => {
    expect(spokenOutcome({
      value: null,
      operation: { label: "UNKNOWN", conf: 0 },
      regions_examined: 2,
    })).toBe("não foi possível reconhecer o valor");
  });
});
