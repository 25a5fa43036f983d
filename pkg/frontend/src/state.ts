import type { Banner, ChatMessage, Notice, ServerFrame } from "./types.js";

export interface ViewState {
  connected: boolean;
  room: string | null;
  messages: ChatMessage[];
  banners: Banner[];
  notices: Notice[];
  minorsPresent: Record<string, boolean>;
  errors: string[];
}

export function initialState(): ViewState {
  return {
    connected: false,
    room: null,
    messages: [],
    banners: [],
    notices: [],
    minorsPresent: {},
    errors: [],
  };
}

function categoryOf(legal: boolean, ethical: boolean): Banner["category"] {
  if (legal && ethical) return "legal + ethical";
  if (legal) return "legal";
  return "ethical";
}

/**
 * Pure frame reducer.  A suppressed frame yields exactly one banner,
 * deduplicated by the server-issued original_ref so redelivered frames
 * cannot stack duplicates.
 */
export function reduce(state: ViewState, frame: ServerFrame): ViewState {
  switch (frame.type) {
    case "message":
      return {
        ...state,
        messages: [
          ...state.messages,
          { room: frame.room, author: frame.author, text: frame.text, ts: frame.ts },
        ],
      };
    case "suppressed": {
      if (state.banners.some((b) => b.ref === frame.original_ref)) {
        return state;
      }
      const banner: Banner = {
        ref: frame.original_ref,
        room: frame.room,
        category: categoryOf(frame.legal, frame.ethical),
        reason: frame.reason,
        counter: frame.counter,
      };
      return { ...state, banners: [...state.banners, banner] };
    }
    case "held":
      return {
        ...state,
        notices: [...state.notices, { room: frame.room, cause: frame.cause }],
      };
    case "presence":
      return {
        ...state,
        minorsPresent: { ...state.minorsPresent, [frame.room]: frame.minors_present },
      };
    case "error":
      return { ...state, errors: [...state.errors, frame.message] };
  }
}

export type Listener = (state: ViewState) => void;

/** Minimal observable store around the reducer. */
export class Store {
  private state: ViewState = initialState();
  private listeners: Listener[] = [];

  get(): ViewState {
    return this.state;
  }

  dispatch(frame: ServerFrame): void {
    this.state = reduce(this.state, frame);
    for (const l of this.listeners) l(this.state);
  }

  patch(partial: Partial<ViewState>): void {
    this.state = { ...this.state, ...partial };
    for (const l of this.listeners) l(this.state);
  }

  reset(): void {
    this.state = initialState();
    for (const l of this.listeners) l(this.state);
  }

  subscribe(listener: Listener): () => void {
    this.listeners.push(listener);
    return () => {
      this.listeners = this.listeners.filter((l) => l !== listener);
    };
  }
}
