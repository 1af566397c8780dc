/** Typed client for the recommendation service's JSON API. */

export interface SymptomRecord {
  syd: number;
  name: string;
}

export interface Recommendation {
  did: number;
  disease: string;
  score: number;
  remedies: string[];
  no_recorded_treatment: boolean;
}

export interface RecommendationResponse {
  query: { symptom_ids: number[]; n: number };
  results: Recommendation[];
  model: {
    scheme: string;
    rank: number;
    corpus_hash: string;
    excluded_diseases: number;
    rank_by: string;
  };
}

export interface HealthResponse {
  status: "ready" | "empty";
  model_hash: string | null;
  corpus_counts: Record<string, number> | null;
}

/** What the session controller needs from the backend; the HTTP client
 * implements it for the browser and tests substitute a replaying stub. */
export interface ApiClient {
  searchSymptoms(q: string, limit: number, signal?: AbortSignal): Promise<SymptomRecord[]>;
  recommend(symptomIds: number[], n: number, signal?: AbortSignal): Promise<RecommendationResponse>;
  health(): Promise<HealthResponse>;
}

async function asJson<T>(response: Response): Promise<T> {
  if (!response.ok) {
    let detail = `${response.status}`;
    try {
      const body = await response.json();
      detail = body?.error?.message ?? detail;
    } catch {
      /* not JSON, keep the status code */
    }
    throw new Error(`request failed: ${detail}`);
  }
  return response.json() as Promise<T>;
}

export class HttpApiClient implements ApiClient {
  constructor(private readonly baseUrl: string) {}

  searchSymptoms(q: string, limit: number, signal?: AbortSignal): Promise<SymptomRecord[]> {
    const params = new URLSearchParams({ q, limit: String(limit) });
    return fetch(`${this.baseUrl}/symptoms?${params}`, { signal }).then(
      (r) => asJson<SymptomRecord[]>(r),
    );
  }

  recommend(symptomIds: number[], n: number, signal?: AbortSignal): Promise<RecommendationResponse> {
    return fetch(`${this.baseUrl}/recommend`, {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify({ symptom_ids: symptomIds, n }),
      signal,
    }).then((r) => asJson<RecommendationResponse>(r));
  }

  health(): Promise<HealthResponse> {
    return fetch(`${this.baseUrl}/health`).then((r) => asJson<HealthResponse>(r));
  }
}
