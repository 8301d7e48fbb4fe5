// Orchestration: session transitions driven by API responses, with
// neighborhood caching for instant back-navigation, stale-response
// discarding, and error surfacing that leaves the session untouched.

import { ApiClient } from "./api.js";
import {
    NavSession,
    emptySession,
    serializeSession,
    setFocus,
    setView,
    stepBack,
    togglePin,
    ViewKind,
} from "./session.js";
import { ApiError, ScaffoldEntry } from "./types.js";
import {
    EgoView,
    FbddPanel,
    MemberTable,
    egoView,
    fbddPanel,
    memberTable,
} from "./viewmodel.js";

export interface Toast {
    kind: "error" | "info";
    text: string;
}

export interface NavigatorState {
    session: NavSession;
    neighborhood: EgoView | null;
    members: MemberTable | null;
    fbdd: FbddPanel | null;
    toast: Toast | null;
    busy: boolean;
}

type Listener = (state: NavigatorState) => void;

export class NavigatorController {
    private session: NavSession = emptySession();
    private neighborhoodCache = new Map<string, EgoView>();
    private entryCache = new Map<string, ScaffoldEntry>();
    private state: NavigatorState = {
        session: this.session,
        neighborhood: null,
        members: null,
        fbdd: null,
        toast: null,
        busy: false,
    };
    private listeners: Listener[] = [];
    private membersSeq = 0;
    private neighborhoodSeq = 0;

    constructor(private api: ApiClient) {}

    subscribe(listener: Listener): void {
        this.listeners.push(listener);
    }

    getState(): NavigatorState {
        return this.state;
    }

    serialized(): string {
        return serializeSession(this.session);
    }

    private publish(partial: Partial<NavigatorState>): void {
        this.session = (partial.session ?? this.session);
        this.state = { ...this.state, ...partial, session: this.session };
        for (const listener of this.listeners) {
            listener(this.state);
        }
    }

    /** Project a molecule or scaffold key and focus its class. */
    async focusSmiles(smiles: string): Promise<void> {
        const seq = ++this.neighborhoodSeq;
        this.publish({ busy: true, toast: null });
        try {
            const { data } = await this.api.projectScaffold(smiles);
            if (seq !== this.neighborhoodSeq) return; // a newer focus won
            if (!data.indexed) {
                this.publish({
                    busy: false,
                    toast: { kind: "error",
                             text: `scaffold not in index: ${data.scaffold}` },
                });
                return;
            }
            this.entryCache.set(data.scaffold, {
                key: data.scaffold,
                ring_count: data.ring_count,
                class_size: data.class_size,
                virtual: data.virtual,
            });
            await this.applyFocus(data.scaffold, seq);
        } catch (error) {
            if (seq !== this.neighborhoodSeq) return;
            this.fail(error);
        }
    }

    /** Step along an edge shown in the current neighborhood. */
    async navigate(direction: "successor" | "predecessor",
                   key: string): Promise<void> {
        const neighborhood = this.state.neighborhood;
        if (!neighborhood) return;
        const role = direction === "successor" ? "successor" : "predecessor";
        const visible = neighborhood.nodes.some(
            (n) => n.role === role && n.key === key);
        if (!visible) {
            this.publish({
                toast: { kind: "error",
                         text: `${key} is not a ${direction} of the focus` },
            });
            return;
        }
        await this.applyFocus(key);
    }

    /** Back to the previous trail entry, from cache, no refetch. */
    back(): void {
        const previous = stepBack(this.session);
        if (previous === this.session) return;
        const cached = previous.focus !== null
            ? this.neighborhoodCache.get(previous.focus) ?? null
            : null;
        this.publish({
            session: previous,
            neighborhood: cached,
            toast: null,
        });
    }

    private async applyFocus(key: string,
                             seq = ++this.neighborhoodSeq): Promise<void> {
        this.publish({ busy: true, toast: null });
        try {
            const view = await this.fetchNeighborhood(key);
            if (seq !== this.neighborhoodSeq) return; // a newer request won
            this.neighborhoodCache.set(key, view);
            this.publish({
                session: setFocus(this.session, key),
                neighborhood: view,
                busy: false,
            });
        } catch (error) {
            if (seq !== this.neighborhoodSeq) return;
            this.fail(error);
        }
    }

    private async fetchNeighborhood(key: string): Promise<EgoView> {
        const focus = await this.entryFor(key);
        const [preds, succs] = await Promise.all([
            this.api.predecessors(key),
            this.api.successors(key),
        ]);
        for (const entry of [...preds.data.predecessors,
                             ...succs.data.successors]) {
            this.entryCache.set(entry.key, entry);
        }
        return egoView(focus, preds.data, succs.data);
    }

    private async entryFor(key: string): Promise<ScaffoldEntry> {
        const cached = this.entryCache.get(key);
        if (cached) return cached;
        const { data } = await this.api.projectScaffold(key);
        const entry: ScaffoldEntry = {
            key: data.scaffold,
            ring_count: data.ring_count,
            class_size: data.class_size,
            virtual: data.virtual,
        };
        this.entryCache.set(entry.key, entry);
        return entry;
    }

    /** Class inspector: paginated members of a scaffold class. */
    async inspect(key: string, cursor?: string): Promise<void> {
        const seq = ++this.membersSeq;
        try {
            const entry = await this.entryFor(key);
            const { data } = await this.api.expand(key, 100, cursor);
            if (seq !== this.membersSeq) return; // stale page discarded
            const table = memberTable(data, entry.virtual);
            if (cursor && this.state.members?.scaffoldKey === key) {
                table.rows = [...this.state.members.rows, ...table.rows];
            }
            this.publish({ members: table, session: setView(this.session, "members") });
        } catch (error) {
            if (seq !== this.membersSeq) return;
            this.fail(error);
        }
    }

    pin(key: string): void {
        this.publish({ session: togglePin(this.session, key) });
    }

    /** What-if composition: intersect the upper cones of the pinned hits. */
    async runFbdd(): Promise<void> {
        if (this.session.pinnedHits.length === 0) {
            this.publish({
                toast: { kind: "info", text: "pin at least one hit first" },
            });
            return;
        }
        this.publish({ busy: true, toast: null });
        try {
            const { data } = await this.api.fbdd(this.session.pinnedHits);
            this.publish({ fbdd: fbddPanel(data), busy: false });
        } catch (error) {
            this.fail(error);
        }
    }

    setView(view: ViewKind): void {
        this.publish({ session: setView(this.session, view) });
    }

    restore(session: NavSession): Promise<void> {
        this.session = session;
        this.publish({ session });
        if (session.focus !== null) {
            return this.applyFocus(session.focus).then(() => {
                // applyFocus appends to the trail; restoring must not
                this.publish({ session });
            });
        }
        return Promise.resolve();
    }

    private fail(error: unknown): void {
        const text = error instanceof ApiError
            ? `${error.body.code}: ${error.body.message}`
            : String(error);
        this.publish({ busy: false, toast: { kind: "error", text } });
    }
}
