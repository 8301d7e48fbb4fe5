// Fixture-backed fetch: requests resolve against recorded API responses,
// matched on (method, decoded url, body). Unmatched requests throw so a
// test can never silently invent data.

import type { FetchLike } from "../src/api.js";
import recordings from "./fixtures/recordings.json";
import keys from "./fixtures/keys.json";

export interface Recording {
    method: string;
    url: string;
    body: unknown;
    status: number;
    response: unknown;
}

export const RECORDINGS = recordings as Record<string, Recording>;
export const KEYS = keys as {
    benzene: string;
    azepane: string;
    sulfonamide: string;
    ether: string;
};

function safeDecode(url: string): string {
    try {
        return decodeURIComponent(url);
    } catch {
        return url;
    }
}

function matchKey(method: string, url: string, body?: unknown): string {
    const path = url.replace(/^https?:\/\/[^/]+/, "");
    return `${method} ${safeDecode(path)} ${body === undefined || body === null
        ? "" : JSON.stringify(body)}`;
}

export interface FixtureFetch {
    fetchFn: FetchLike;
    calls: Array<{ method: string; url: string }>;
}

export function fixtureFetch(): FixtureFetch {
    const table = new Map<string, Recording>();
    for (const recording of Object.values(RECORDINGS)) {
        table.set(
            matchKey(recording.method, recording.url, recording.body),
            recording,
        );
    }
    const calls: Array<{ method: string; url: string }> = [];
    const fetchFn: FetchLike = async (url, init) => {
        const method = init?.method ?? "GET";
        const body = init?.body ? JSON.parse(init.body as string) : undefined;
        calls.push({ method, url });
        const recording = table.get(matchKey(method, url, body));
        if (!recording) {
            throw new Error(`no fixture for ${method} ${safeDecode(url)}`);
        }
        return {
            ok: recording.status >= 200 && recording.status < 300,
            status: recording.status,
            json: async () => recording.response,
        } as Response;
    };
    return { fetchFn, calls };
}

/** A fetch whose responses resolve only when the test releases them. */
export function gatedFetch(inner: FetchLike) {
    const gates: Array<() => void> = [];
    const fetchFn: FetchLike = (url, init) =>
        new Promise<Response>((resolve, reject) => {
            gates.push(() => inner(url, init).then(resolve, reject));
        });
    return {
        fetchFn,
        release(index: number) {
            gates[index]();
        },
        get pending(): number {
            return gates.length;
        },
    };
}
