// Typed client for the concierge HTTP API.

export interface QaResponse {
  answer: string;
  paragraph: string;
  title: string;
  score: number;
  doc_id: string;
  degraded: boolean;
  latency_ms?: number;
}

export interface BotConfig {
  welcome_message: string;
}

export interface RoomListing {
  id: string;
  name: string;
  capacity: number;
  nightly_rate: number;
  available_units: number;
}

export class ApiError extends Error {
  constructor(
    readonly status: number,
    readonly detail: string,
  ) {
    super(`HTTP ${status}: ${detail}`);
    this.name = "ApiError";
  }
}

async function requestJson<T>(url: string, init?: RequestInit): Promise<T> {
  const response = await fetch(url, init);
  const text = await response.text();
  if (!response.ok) {
    let detail = text;
    try {
      detail = (JSON.parse(text) as { detail?: string }).detail ?? text;
    } catch {
      // non-JSON error body; keep the raw text
    }
    throw new ApiError(response.status, detail);
  }
  return JSON.parse(text) as T;
}

export class ApiClient {
  constructor(private readonly baseUrl: string = "") {}

  getConfig(): Promise<BotConfig> {
    return requestJson<BotConfig>(`${this.baseUrl}/api/config`);
  }

  ask(query: string): Promise<QaResponse> {
    return requestJson<QaResponse>(`${this.baseUrl}/api/ask`, {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify({ query }),
    });
  }

  searchRooms(checkIn: string, checkOut: string, guests: number): Promise<RoomListing[]> {
    const params = new URLSearchParams({
      check_in: checkIn,
      check_out: checkOut,
      guests: String(guests),
    });
    return requestJson<RoomListing[]>(`${this.baseUrl}/api/rooms?${params.toString()}`);
  }
}
