import { ChatApi } from "./api.js";
import { SessionController, type SocketLike } from "./controller.js";
import { render } from "./render.js";
import type { Purpose } from "./types.js";

function el<T extends HTMLElement>(id: string): T {
  const node = document.getElementById(id);
  if (!node) throw new Error(`missing element #${id}`);
  return node as T;
}

export function boot(): void {
  const api = new ChatApi(window.location.origin);
  let controller: SessionController | null = null;

  const view = el<HTMLDivElement>("view");
  const roomInput = el<HTMLInputElement>("room");
  const textInput = el<HTMLInputElement>("text");

  function wire(c: SessionController): void {
    c.store.subscribe((state) => {
      view.innerHTML = render(state);
    });
  }

  el<HTMLButtonElement>("connect").addEventListener("click", async () => {
    controller = new SessionController(
      api,
      // MessageEvent narrows to { data: string } for our text frames
      (url) => new WebSocket(url) as unknown as SocketLike,
      {
        userId: el<HTMLInputElement>("user").value,
        podId: el<HTMLInputElement>("pod").value,
        credential: el<HTMLInputElement>("credential").value,
      },
    );
    wire(controller);
    for (const purpose of ["moderation", "minor_check", "counter_speech"] as Purpose[]) {
      const box = el<HTMLInputElement>(`consent-${purpose}`);
      await controller.setConsent(purpose, box.checked);
      box.addEventListener("change", () => controller?.setConsent(purpose, box.checked));
    }
    await controller.connect();
  });

  el<HTMLButtonElement>("disconnect").addEventListener("click", () => controller?.disconnect());
  el<HTMLButtonElement>("join").addEventListener("click", () => controller?.join(roomInput.value));
  el<HTMLButtonElement>("post").addEventListener("click", () => {
    controller?.post(roomInput.value, textInput.value);
    textInput.value = "";
  });
}

boot();
