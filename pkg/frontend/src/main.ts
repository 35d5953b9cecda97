// Browser wiring: camera capture, DOM updates, loop control.

import { HttpServiceApi } from "./api.js";
import { FrameLoop } from "./loop.js";
import { speak } from "./speech.js";
import { CAMERA_DENIED_BANNER, UiFeedbackView } from "./view.js";

const MAX_UPLOAD_HEIGHT = 1280;

function renderBannerOnly(view: Pick<UiFeedbackView, "banner">): void {
  const banner = document.getElementById("banner")!;
  banner.textContent = `${view.banner.textPtBr} (${view.banner.text})`;
  banner.style.backgroundColor = view.banner.color;
}

function render(view: UiFeedbackView): void {
  renderBannerOnly(view);
  const pips = document.getElementById("pips")!;
  pips.textContent = "●".repeat(view.pips) + "○".repeat(Math.max(0, 5 - view.pips));
  const panel = document.getElementById("outcome")!;
  const again = document.getElementById("scan-again")! as HTMLButtonElement;
  if (view.outcome) {
    const value = view.outcome.valueText ?? "valor não reconhecido";
    const op = view.outcome.operation ?? "";
    panel.textContent = op ? `${value} ${op}` : value;
    panel.hidden = false;
    again.hidden = false;
  } else {
    panel.hidden = true;
    again.hidden = true;
  }
}

async function captureFactory(): Promise<() => Promise<string>> {
  const stream = await navigator.mediaDevices.getUserMedia({
    video: { facingMode: "environment" },
  });
  const video = document.getElementById("camera") as HTMLVideoElement;
  video.srcObject = stream;
  await video.play();
  const canvas = document.createElement("canvas");
  return async () => {
    const scale = Math.min(1, MAX_UPLOAD_HEIGHT / video.videoHeight);
    canvas.width = Math.round(video.videoWidth * scale);
    canvas.height = Math.round(video.videoHeight * scale);
    const ctx = canvas.getContext("2d")!;
    ctx.drawImage(video, 0, 0, canvas.width, canvas.height);
    return canvas.toDataURL("image/png").split(",", 2)[1];
  };
}

async function boot(): Promise<void> {
  let captureFrame: () => Promise<string>;
  try {
    captureFrame = await captureFactory();
  } catch {
    renderBannerOnly({ banner: CAMERA_DENIED_BANNER });
    return;
  }
  const loop = new FrameLoop({
    api: new HttpServiceApi(""),
    captureFrame,
    onView: render,
    speak,
    delay: (ms) => new Promise((resolve) => setTimeout(resolve, ms)),
  });
  document.getElementById("scan-again")!.addEventListener("click", () => {
    void loop.scanAgain();
  });
  await loop.start();
}

if (typeof document !== "undefined") {
  void boot();
}
