// Single configuration point: the API base URL.

declare global {
    interface Window {
        SCAFNAV_API?: string;
    }
}

const STORAGE_KEY = "scafnav.apiBase";

export function apiBaseUrl(): string {
    if (typeof window !== "undefined") {
        if (window.SCAFNAV_API) return window.SCAFNAV_API;
        const stored = window.localStorage?.getItem(STORAGE_KEY);
        if (stored) return stored;
    }
    return "http://127.0.0.1:8080";
}

export function setApiBaseUrl(url: string): void {
    window.localStorage?.setItem(STORAGE_KEY, url);
}
