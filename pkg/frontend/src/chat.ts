// The "Emma" voice chat widget: a single-session state machine over a small
// DOM tree. Every displayed answer string comes verbatim from the API; the
// widget never rewrites server content.

import { ApiClient, QaResponse } from "./api.js";
import { browserSpeech, browserSynthesis, SpeechAdapter, SynthesisAdapter } from "./speech.js";

export type ChatPhase =
  | "closed"
  | "idle"
  | "listening"
  | "transcribed"
  | "awaiting_answer"
  | "answered"
  | "error";

const FALLBACK_WELCOME = "My name is Emma, your voice assistance, how can I help you today?";

export interface ChatWidgetOptions {
  speech?: SpeechAdapter;
  synthesis?: SynthesisAdapter;
  recognitionLang?: string;
}

export class ChatWidget {
  phase: ChatPhase = "closed";
  lastResponse: QaResponse | null = null;

  private readonly speech: SpeechAdapter;
  private readonly synthesis: SynthesisAdapter;
  private readonly lang: string;

  private panel!: HTMLElement;
  private messages!: HTMLElement;
  private transcriptArea!: HTMLTextAreaElement;
  private talkButton!: HTMLButtonElement;
  private sendButton!: HTMLButtonElement;
  private loadingIndicator!: HTMLElement;
  private errorBanner!: HTMLElement;

  constructor(
    private readonly root: HTMLElement,
    private readonly api: ApiClient,
    options: ChatWidgetOptions = {},
  ) {
    this.speech = options.speech ?? browserSpeech();
    this.synthesis = options.synthesis ?? browserSynthesis();
    this.lang = options.recognitionLang ?? "en-US";
    this.render();
  }

  private render(): void {
    this.root.innerHTML = "";

    const openButton = document.createElement("button");
    openButton.className = "emma-open";
    openButton.textContent = "Chat (voice)";
    openButton.addEventListener("click", () => void this.open());

    this.panel = document.createElement("section");
    this.panel.className = "emma-panel";
    this.panel.hidden = true;

    this.transcriptArea = document.createElement("textarea");
    this.transcriptArea.className = "emma-transcript";
    this.transcriptArea.placeholder = "Ask me anything about the hotel";
    this.transcriptArea.addEventListener("input", () => this.syncSendState());

    this.messages = document.createElement("div");
    this.messages.className = "emma-messages";

    this.loadingIndicator = document.createElement("span");
    this.loadingIndicator.className = "emma-loading";
    this.loadingIndicator.textContent = "…";
    this.loadingIndicator.hidden = true;

    this.talkButton = document.createElement("button");
    this.talkButton.className = "emma-talk";
    this.talkButton.textContent = "Talk";
    this.talkButton.hidden = !this.speech.available;
    this.talkButton.addEventListener("click", () => void this.startListening());

    this.sendButton = document.createElement("button");
    this.sendButton.className = "emma-send";
    this.sendButton.textContent = "Send";
    this.sendButton.disabled = true;
    this.sendButton.addEventListener("click", () => void this.send());

    this.errorBanner = document.createElement("div");
    this.errorBanner.className = "emma-error-banner";
    this.errorBanner.hidden = true;

    const compose = document.createElement("div");
    compose.className = "emma-compose";
    // loading indicator sits to the upper left of the Talk button
    compose.append(this.loadingIndicator, this.talkButton, this.sendButton);

    this.panel.append(this.transcriptArea, compose, this.messages, this.errorBanner);
    this.root.append(openButton, this.panel);
  }

  get transcript(): string {
    return this.transcriptArea.value;
  }

  set transcript(value: string) {
    this.transcriptArea.value = value;
    this.syncSendState();
  }

  async open(): Promise<void> {
    this.panel.hidden = false;
    this.setPhase("idle");
    let welcome = FALLBACK_WELCOME;
    let spoken = true;
    try {
      welcome = (await this.api.getConfig()).welcome_message;
    } catch {
      spoken = false; // config unreachable: show the default, text-only
    }
    this.addBubble("bot", welcome);
    if (spoken && this.synthesis.available) {
      this.synthesis.speak(welcome);
    }
  }

  async startListening(): Promise<void> {
    if (!this.speech.available || this.phase === "listening" || this.phase === "awaiting_answer") {
      return;
    }
    this.hideError();
    this.setPhase("listening");
    try {
      const heard = await this.speech.listen(this.lang);
      this.transcript = heard; // editable before send
      this.setPhase("transcribed");
    } catch (error) {
      this.showError(
        error instanceof Error ? error.message : "microphone unavailable; you can still type",
      );
      this.setPhase("idle");
    }
  }

  async send(): Promise<void> {
    const query = this.transcript.trim();
    if (!query || this.phase === "awaiting_answer") {
      return;
    }
    this.hideError();
    this.addBubble("user", query);
    this.setPhase("awaiting_answer");
    try {
      const response = await this.api.ask(query);
      this.lastResponse = response;
      this.renderAnswer(response);
      if (this.synthesis.available) {
        this.synthesis.speak(response.answer);
      }
      this.transcript = "";
      this.setPhase("answered");
    } catch (error) {
      // transcript stays in the text area so the user can retry
      this.addBubble(
        "error",
        error instanceof Error ? error.message : "the concierge service is unreachable",
      );
      this.setPhase("error");
    }
  }

  private renderAnswer(response: QaResponse): void {
    const bubble = this.addBubble("bot", response.answer);
    if (this.synthesis.available) {
      const play = document.createElement("button");
      play.className = "emma-play";
      play.textContent = "Play";
      play.addEventListener("click", () => this.synthesis.speak(response.answer));
      bubble.append(play);
    }
    if (response.score > 0) {
      // collapsed transcript control; expanding reveals answer, paragraph, title
      const toggle = document.createElement("button");
      toggle.className = "emma-transcript-toggle";
      toggle.textContent = "Transcript";
      const details = document.createElement("div");
      details.className = "emma-answer-details";
      details.hidden = true;
      for (const [label, value] of [
        ["Answer", response.answer],
        ["Paragraph", response.paragraph],
        ["Document", response.title],
      ] as const) {
        const row = document.createElement("p");
        const caption = document.createElement("strong");
        caption.textContent = `${label}: `;
        const content = document.createElement("span");
        content.className = `emma-detail-${label.toLowerCase()}`;
        content.textContent = value;
        row.append(caption, content);
        details.append(row);
      }
      toggle.addEventListener("click", () => {
        details.hidden = !details.hidden;
      });
      bubble.append(toggle, details);
    }
  }

  private addBubble(kind: "bot" | "user" | "error", text: string): HTMLElement {
    const bubble = document.createElement("div");
    bubble.className = `emma-bubble emma-${kind}`;
    const body = document.createElement("p");
    body.className = "emma-bubble-text";
    body.textContent = text;
    bubble.append(body);
    this.messages.append(bubble);
    return bubble;
  }

  private setPhase(phase: ChatPhase): void {
    this.phase = phase;
    this.loadingIndicator.hidden = phase !== "awaiting_answer";
    this.talkButton.disabled = phase === "awaiting_answer" || phase === "listening";
    this.syncSendState();
  }

  private syncSendState(): void {
    this.sendButton.disabled =
      this.transcriptArea.value.trim() === "" || this.phase === "awaiting_answer";
  }

  private showError(message: string): void {
    this.errorBanner.textContent = message;
    this.errorBanner.hidden = false;
  }

  private hideError(): void {
    this.errorBanner.hidden = true;
  }
}
