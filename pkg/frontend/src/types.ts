/** Wire frames the chat server pushes over the WebSocket. */

export interface MessageFrame {
  type: "message";
  room: string;
  author: string;
  text: string;
  ts: number;
}

export interface SuppressedFrame {
  type: "suppressed";
  room: string;
  legal: boolean;
  ethical: boolean;
  reason: string;
  counter: string;
  original_ref: string;
}

export interface HeldFrame {
  type: "held";
  room: string;
  cause: string;
}

export interface PresenceFrame {
  type: "presence";
  room: string;
  minors_present: boolean;
}

export interface ErrorFrame {
  type: "error";
  message: string;
}

export type ServerFrame =
  | MessageFrame
  | SuppressedFrame
  | HeldFrame
  | PresenceFrame
  | ErrorFrame;

/** Frames the client sends. */
export type ClientFrame =
  | { type: "join"; room: string }
  | { type: "leave"; room: string }
  | { type: "post"; room: string; text: string };

export type Purpose = "moderation" | "minor_check" | "counter_speech";

export interface ChatMessage {
  room: string;
  author: string;
  text: string;
  ts: number;
}

/** One banner per suppressed frame, shown to the author only. */
export interface Banner {
  ref: string;
  room: string;
  category: "legal" | "ethical" | "legal + ethical";
  reason: string;
  counter: string;
}

export interface Notice {
  room: string;
  cause: string;
}
