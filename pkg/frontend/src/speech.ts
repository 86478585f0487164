// Adapters over the browser speech APIs. Both degrade to `available: false`
// so the widget can fall back to a text-only flow.

export interface SpeechAdapter {
  available: boolean;
  /** Listen until the user stops talking; resolves the final transcript. */
  listen(lang?: string): Promise<string>;
}

export interface SynthesisAdapter {
  available: boolean;
  speak(text: string, options?: { rate?: number; pitch?: number }): void;
}

function recognitionConstructor(w: Window): (new () => SpeechRecognitionLike) | undefined {
  return w.SpeechRecognition ?? w.webkitSpeechRecognition;
}

export function browserSpeech(w: Window = window): SpeechAdapter {
  const Recognition = recognitionConstructor(w);
  if (!Recognition) {
    return {
      available: false,
      listen: () => Promise.reject(new Error("speech recognition unsupported")),
    };
  }
  return {
    available: true,
    listen(lang = "en-US") {
      return new Promise<string>((resolve, reject) => {
        const recognition = new Recognition();
        recognition.lang = lang;
        recognition.continuous = false; // stop at end of speech
        recognition.interimResults = false;
        let transcript = "";
        let failed: Error | null = null;
        recognition.onresult = (event) => {
          for (let i = event.resultIndex; i < event.results.length; i += 1) {
            const result = event.results[i];
            if (result.isFinal) {
              transcript += result[0].transcript;
            }
          }
        };
        recognition.onerror = (event) => {
          failed = new Error(event.error ?? "speech recognition error");
        };
        recognition.onend = () => {
          if (failed) {
            reject(failed);
          } else {
            resolve(transcript.trim());
          }
        };
        recognition.start();
      });
    },
  };
}

export function browserSynthesis(w: Window = window): SynthesisAdapter {
  const synthesis = w.speechSynthesis as SpeechSynthesis | undefined;
  const Utterance = (w as unknown as { SpeechSynthesisUtterance?: typeof SpeechSynthesisUtterance })
    .SpeechSynthesisUtterance;
  if (!synthesis || !Utterance) {
    return { available: false, speak: () => {} };
  }
  return {
    available: true,
    speak(text, options = {}) {
      const utterance = new Utterance(text);
      if (options.rate !== undefined) utterance.rate = options.rate;
      if (options.pitch !== undefined) utterance.pitch = options.pitch;
      synthesis.speak(utterance);
    },
  };
}
