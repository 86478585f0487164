// Shared fetch mocking for widget tests: a queue of scripted responses plus
// a record of every request the widget made.

import { vi } from "vitest";

export interface RecordedRequest {
  url: string;
  init?: RequestInit;
}

export interface FetchScript {
  requests: RecordedRequest[];
  queue(status: number, body: unknown): void;
  queueDeferred(status: number, body: unknown): () => void;
}

export function installFetchScript(): FetchScript {
  const requests: RecordedRequest[] = [];
  const pending: Array<() => Promise<Response>> = [];

  const fetchMock = vi.fn(async (url: string | URL, init?: RequestInit) => {
    requests.push({ url: String(url), init });
    const next = pending.shift();
    if (!next) {
      throw new Error(`unexpected fetch: ${String(url)}`);
    }
    return next();
  });
  vi.stubGlobal("fetch", fetchMock);

  const makeResponse = (status: number, body: unknown) =>
    new Response(JSON.stringify(body), {
      status,
      headers: { "Content-Type": "application/json" },
    });

  return {
    requests,
    queue(status, body) {
      pending.push(() => Promise.resolve(makeResponse(status, body)));
    },
    queueDeferred(status, body) {
      let release!: () => void;
      const gate = new Promise<void>((resolve) => {
        release = resolve;
      });
      pending.push(async () => {
        await gate;
        return makeResponse(status, body);
      });
      return release;
    },
  };
}

/** Let in-flight fetches and DOM updates settle (body reads need macrotasks). */
export async function settle(): Promise<void> {
  for (let i = 0; i < 3; i += 1) {
    await new Promise((resolve) => setTimeout(resolve, 0));
  }
}
