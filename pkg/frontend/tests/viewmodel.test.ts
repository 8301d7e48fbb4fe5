// Parity snapshots: every rendered value must equal a recorded API
// response field, verbatim. The view models never transform chemistry.

import { describe, expect, it } from "vitest";

import type {
    ExpandResponse,
    FbddResponse,
    PredecessorsResponse,
    ScaffoldEntry,
    SuccessorsResponse,
} from "../src/types.js";
import {
    FBDD_EMPTY_STATE,
    VIRTUAL_EMPTY_STATE,
    egoView,
    fbddPanel,
    memberTable,
    memberTsv,
} from "../src/viewmodel.js";
import { KEYS, RECORDINGS } from "./helpers.js";

const benzeneEntry: ScaffoldEntry = {
    key: KEYS.benzene,
    ring_count: 1,
    virtual: false,
    class_size: (RECORDINGS.benzene_expand.response as ExpandResponse).total,
};

describe("egoView", () => {
    const preds = RECORDINGS.benzene_predecessors.response as PredecessorsResponse;
    const succs = RECORDINGS.benzene_successors.response as SuccessorsResponse;
    const view = egoView(benzeneEntry, preds, succs);

    it("renders every successor verbatim from the response", () => {
        const rendered = view.nodes.filter((n) => n.role === "successor");
        expect(rendered.map((n) => n.key)).toEqual(
            succs.successors.map((s) => s.key));
        for (const node of rendered) {
            const source = succs.successors.find((s) => s.key === node.key)!;
            expect(node.ringCount).toBe(source.ring_count);
            expect(node.classSize).toBe(source.class_size);
            expect(node.virtual).toBe(source.virtual);
            expect(node.label).toBe(source.key);
        }
    });

    it("layers by hierarchy: predecessors above, successors below", () => {
        for (const node of view.nodes) {
            if (node.role === "focus") expect(node.layer).toBe(0);
            if (node.role === "predecessor") expect(node.layer).toBe(-1);
            if (node.role === "successor") expect(node.layer).toBe(1);
        }
    });

    it("disables the predecessor control on an empty set", () => {
        expect(preds.predecessors.length).toBe(0);
        expect(view.predecessorsDisabled).toBe(true);
    });

    it("draws one edge per neighbor through the focus", () => {
        expect(view.edges.length).toBe(
            preds.predecessors.length + succs.successors.length);
        for (const edge of view.edges) {
            expect([edge.from, edge.to]).toContain(KEYS.benzene);
        }
    });
});

describe("memberTable", () => {
    it("copies benzene members verbatim", () => {
        const expand = RECORDINGS.benzene_expand.response as ExpandResponse;
        const table = memberTable(expand, false);
        expect(table.total).toBe(expand.total);
        expect(table.rows.map((r) => r.smiles)).toEqual(
            expand.members.map((m) => m.smiles));
        expect(table.rows.map((r) => r.id)).toEqual(
            expand.members.map((m) => m.id));
        expect(table.emptyState).toBeNull();
    });

    it("labels virtual classes with the fragmentation empty state", () => {
        const expand = RECORDINGS.azepane_expand.response as ExpandResponse;
        expect(expand.members.length).toBe(0);
        const table = memberTable(expand, true);
        expect(table.emptyState).toBe(VIRTUAL_EMPTY_STATE);
    });

    it("exports TSV matching the expand response", () => {
        const expand = RECORDINGS.benzene_expand.response as ExpandResponse;
        const tsv = memberTsv(memberTable(expand, false));
        const lines = tsv.replace(/\n$/, "").split("\n");
        expect(lines.length).toBe(expand.members.length);
        lines.forEach((line, i) => {
            const member = expand.members[i];
            expect(line).toBe(
                `${member.id}\t${member.smiles}\t${member.source_tag ?? ""}`);
        });
    });
});

describe("fbddPanel", () => {
    it("lists grown scaffolds with class sizes verbatim", () => {
        const response = RECORDINGS.fbdd_benzene_azepane.response as FbddResponse;
        const panel = fbddPanel(response);
        expect(panel.rows.map((r) => r.key)).toEqual(
            response.scaffolds.map((s) => s.key));
        expect(panel.rows.map((r) => r.classSize)).toEqual(
            response.scaffolds.map((s) => s.class_size));
        expect(panel.rows.map((r) => r.key)).toContain(KEYS.sulfonamide);
        expect(panel.emptyState).toBeNull();
    });

    it("shows an explicit empty-intersection state", () => {
        const response = RECORDINGS.fbdd_disjoint.response as FbddResponse;
        expect(response.scaffolds.length).toBe(0);
        const panel = fbddPanel(response);
        expect(panel.emptyState).toBe(FBDD_EMPTY_STATE);
    });
});
