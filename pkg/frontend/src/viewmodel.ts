// View models: verbatim projections of API responses into renderable
// structures. No chemistry happens here; every displayed string or number
// is copied from a response field, which the parity tests assert.

import {
    ExpandResponse,
    FbddResponse,
    PredecessorsResponse,
    ScaffoldEntry,
    SuccessorsResponse,
} from "./types.js";

export interface EgoNode {
    key: string;
    label: string;
    ringCount: number;
    classSize: number;
    virtual: boolean;
    role: "focus" | "predecessor" | "successor";
    /** vertical layer: hierarchy level relative to the focus (-1, 0, +1) */
    layer: number;
    x: number; // 0..1 within the layer
}

export interface EgoView {
    focusKey: string;
    focusRingCount: number;
    nodes: EgoNode[];
    edges: Array<{ from: string; to: string }>;
    predecessorsDisabled: boolean;
}

function entryNode(entry: ScaffoldEntry, role: EgoNode["role"],
                   layer: number, x: number): EgoNode {
    return {
        key: entry.key,
        label: entry.key,
        ringCount: entry.ring_count,
        classSize: entry.class_size,
        virtual: entry.virtual,
        role,
        layer,
        x,
    };
}

function spread(count: number, i: number): number {
    return count <= 1 ? 0.5 : i / (count - 1);
}

/** Two-level ego view: predecessors one hierarchy layer up, successors one
 * down, everything laid out by its ring count relative to the focus. */
export function egoView(focus: ScaffoldEntry,
                        predecessors: PredecessorsResponse,
                        successors: SuccessorsResponse): EgoView {
    const nodes: EgoNode[] = [
        entryNode(focus, "focus", 0, 0.5),
    ];
    const edges: Array<{ from: string; to: string }> = [];
    predecessors.predecessors.forEach((entry, i) => {
        nodes.push(entryNode(entry, "predecessor", -1,
            spread(predecessors.predecessors.length, i)));
        edges.push({ from: entry.key, to: focus.key });
    });
    successors.successors.forEach((entry, i) => {
        nodes.push(entryNode(entry, "successor", 1,
            spread(successors.successors.length, i)));
        edges.push({ from: focus.key, to: entry.key });
    });
    return {
        focusKey: focus.key,
        focusRingCount: focus.ring_count,
        nodes,
        edges,
        predecessorsDisabled: predecessors.predecessors.length === 0,
    };
}

// -- class inspector -----------------------------------------------------------

export interface MemberRow {
    id: number;
    smiles: string;
    sourceTag: string;
}

export interface MemberTable {
    scaffoldKey: string;
    total: number;
    rows: MemberRow[];
    nextCursor: string | null;
    emptyState: string | null;
}

export const VIRTUAL_EMPTY_STATE = "virtual (fragmentation-derived)";

export function memberTable(expand: ExpandResponse,
                            virtual: boolean): MemberTable {
    const rows = expand.members.map((m) => ({
        id: m.id,
        smiles: m.smiles,
        sourceTag: m.source_tag ?? "",
    }));
    let emptyState: string | null = null;
    if (rows.length === 0) {
        emptyState = virtual ? VIRTUAL_EMPTY_STATE : "no members";
    }
    return {
        scaffoldKey: expand.scaffold,
        total: expand.total,
        rows,
        nextCursor: expand.next_cursor,
        emptyState,
    };
}

/** TSV export of the member table; mirrors the /expand response fields. */
export function memberTsv(table: MemberTable): string {
    const lines = table.rows.map(
        (r) => `${r.id}\t${r.smiles}\t${r.sourceTag}`);
    return lines.join("\n") + (lines.length ? "\n" : "");
}

// -- FBDD panel ------------------------------------------------------------------

export interface FbddRow {
    key: string;
    classSize: number;
    ringCount: number;
    virtual: boolean;
}

export interface FbddPanel {
    rows: FbddRow[];
    truncated: boolean;
    emptyState: string | null;
}

export const FBDD_EMPTY_STATE = "empty intersection";

export function fbddPanel(response: FbddResponse): FbddPanel {
    const rows = response.scaffolds.map((s) => ({
        key: s.key,
        classSize: s.class_size,
        ringCount: s.ring_count,
        virtual: s.virtual,
    }));
    return {
        rows,
        truncated: response.truncated,
        emptyState: rows.length === 0 ? FBDD_EMPTY_STATE : null,
    };
}
