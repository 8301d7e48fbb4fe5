// API client: in-flight request dedup per endpoint+params, and a global
// sequence number so callers can discard answers that arrive late.

import {
    ApiError,
    ApiErrorBody,
    ConeResponse,
    ExpandResponse,
    FbddResponse,
    PredecessorsResponse,
    ScaffoldProjection,
    SuccessorsResponse,
} from "./types.js";

export type FetchLike = (url: string, init?: RequestInit) => Promise<Response>;

export interface Stamped<T> {
    seq: number;
    data: T;
}

export class ApiClient {
    private nextSeq = 1;
    private inflight = new Map<string, Promise<unknown>>();

    constructor(
        private baseUrl: string,
        private fetchFn: FetchLike = (url, init) => fetch(url, init),
    ) {}

    get lastSeq(): number {
        return this.nextSeq - 1;
    }

    private async request<T>(method: "GET" | "POST", path: string,
                             body?: unknown): Promise<Stamped<T>> {
        const seq = this.nextSeq++;
        const cacheKey = `${method} ${path} ${body ? JSON.stringify(body) : ""}`;
        let pending = this.inflight.get(cacheKey) as Promise<T> | undefined;
        if (!pending) {
            pending = this.execute<T>(method, path, body);
            this.inflight.set(cacheKey, pending);
            // cleanup must not spawn an unhandled rejection chain
            pending.catch(() => undefined)
                .then(() => this.inflight.delete(cacheKey));
        }
        return { seq, data: await pending };
    }

    private async execute<T>(method: string, path: string,
                             body?: unknown): Promise<T> {
        const init: RequestInit = { method };
        if (body !== undefined) {
            init.headers = { "content-type": "application/json" };
            init.body = JSON.stringify(body);
        }
        const response = await this.fetchFn(this.baseUrl + path, init);
        const payload = await response.json();
        if (!response.ok) {
            throw new ApiError(response.status, payload as ApiErrorBody);
        }
        return payload as T;
    }

    projectScaffold(smiles: string): Promise<Stamped<ScaffoldProjection>> {
        return this.request("GET",
            `/v1/scaffold?smiles=${encodeURIComponent(smiles)}`);
    }

    successors(key: string): Promise<Stamped<SuccessorsResponse>> {
        return this.request("GET",
            `/v1/scaffold/${encodeURIComponent(key)}/successors`);
    }

    predecessors(key: string): Promise<Stamped<PredecessorsResponse>> {
        return this.request("GET",
            `/v1/scaffold/${encodeURIComponent(key)}/predecessors`);
    }

    expand(key: string, limit = 100,
           cursor?: string): Promise<Stamped<ExpandResponse>> {
        const params = new URLSearchParams({ limit: String(limit) });
        if (cursor) params.set("cursor", cursor);
        return this.request("GET",
            `/v1/scaffold/${encodeURIComponent(key)}/expand?${params}`);
    }

    upperCone(key: string, maxDepth?: number): Promise<Stamped<ConeResponse>> {
        const suffix = maxDepth === undefined ? "" : `?max_depth=${maxDepth}`;
        return this.request("GET",
            `/v1/scaffold/${encodeURIComponent(key)}/uppercone${suffix}`);
    }

    fbdd(hits: string[]): Promise<Stamped<FbddResponse>> {
        return this.request("POST", "/v1/fbdd", { hits });
    }

    stats(): Promise<Stamped<unknown>> {
        return this.request("GET", "/v1/stats");
    }
}
