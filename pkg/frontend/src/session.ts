// Navigation session state: focus scaffold, visited trail, pinned FBDD
// hits, and the active view. Fully serializable into the URL hash so a
// reload restores the same place.

export type ViewKind = "graph" | "members" | "stats";

export interface NavSession {
    focus: string | null;
    trail: string[];
    pinnedHits: string[];
    view: ViewKind;
}

export function emptySession(): NavSession {
    return { focus: null, trail: [], pinnedHits: [], view: "graph" };
}

export function setFocus(session: NavSession, key: string): NavSession {
    if (session.focus === key) return session;
    return {
        ...session,
        focus: key,
        trail: [...session.trail, key],
    };
}

/** Back to the previous trail entry; no-op at the trail head. */
export function stepBack(session: NavSession): NavSession {
    if (session.trail.length < 2) return session;
    const trail = session.trail.slice(0, -1);
    return { ...session, focus: trail[trail.length - 1], trail };
}

export function togglePin(session: NavSession, key: string): NavSession {
    const pinnedHits = session.pinnedHits.includes(key)
        ? session.pinnedHits.filter((k) => k !== key)
        : [...session.pinnedHits, key];
    return { ...session, pinnedHits };
}

export function setView(session: NavSession, view: ViewKind): NavSession {
    return { ...session, view };
}

// -- URL (de)serialization ----------------------------------------------------

export function serializeSession(session: NavSession): string {
    const params = new URLSearchParams();
    if (session.focus !== null) params.set("focus", session.focus);
    if (session.trail.length) params.set("trail", session.trail.join(""));
    if (session.pinnedHits.length) {
        params.set("pins", session.pinnedHits.join(""));
    }
    params.set("view", session.view);
    return params.toString();
}

export function deserializeSession(hash: string): NavSession {
    const params = new URLSearchParams(hash.replace(/^#/, ""));
    const split = (value: string | null): string[] =>
        value ? value.split("").filter((s) => s.length > 0) : [];
    const view = params.get("view");
    const session: NavSession = {
        focus: params.get("focus"),
        trail: split(params.get("trail")),
        pinnedHits: [...new Set(split(params.get("pins")))],
        view: view === "members" || view === "stats" ? view : "graph",
    };
    if (session.focus && session.trail.length === 0) {
        session.trail = [session.focus];
    }
    if (session.focus &&
        session.trail[session.trail.length - 1] !== session.focus) {
        session.trail = [...session.trail, session.focus];
    }
    return session;
}
