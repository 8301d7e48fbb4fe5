// Thin DOM layer. All content comes from the view models; this file only
// positions and wires events.

import { NavigatorController, NavigatorState } from "./controller.js";
import { memberTsv } from "./viewmodel.js";

const SVG_NS = "http://www.w3.org/2000/svg";

export function mount(root: HTMLElement,
                      controller: NavigatorController): void {
    root.innerHTML = `
      <header class="bar">
        <input id="smiles-input" placeholder="SMILES or scaffold key" size="40">
        <button id="go">focus</button>
        <button id="back">back</button>
        <span id="badge" class="badge"></span>
        <nav>
          <button data-view="graph">graph</button>
          <button data-view="members">members</button>
          <button data-view="stats">stats</button>
        </nav>
      </header>
      <div id="toast" class="toast" hidden></div>
      <main>
        <section id="graph-view"></section>
        <section id="members-view" hidden></section>
        <section id="fbdd-view">
          <h3>pinned hits</h3>
          <ul id="pins"></ul>
          <button id="run-fbdd">grow pinned fragments</button>
          <div id="fbdd-results"></div>
        </section>
      </main>`;

    const input = root.querySelector<HTMLInputElement>("#smiles-input")!;
    root.querySelector("#go")!.addEventListener("click", () => {
        if (input.value.trim()) void controller.focusSmiles(input.value.trim());
    });
    root.querySelector("#back")!.addEventListener("click", () => {
        controller.back();
    });
    root.querySelectorAll<HTMLButtonElement>("nav button").forEach((button) => {
        button.addEventListener("click", () => {
            controller.setView(button.dataset.view as never);
        });
    });
    root.querySelector("#run-fbdd")!.addEventListener("click", () => {
        void controller.runFbdd();
    });

    controller.subscribe((state) => render(root, controller, state));
}

function render(root: HTMLElement, controller: NavigatorController,
                state: NavigatorState): void {
    const toast = root.querySelector<HTMLDivElement>("#toast")!;
    toast.hidden = state.toast === null;
    if (state.toast) {
        toast.textContent = state.toast.text;
        toast.className = `toast ${state.toast.kind}`;
    }

    const badge = root.querySelector<HTMLSpanElement>("#badge")!;
    badge.textContent = state.neighborhood
        ? `hierarchy level ${state.neighborhood.focusRingCount}`
        : "";

    const graphView = root.querySelector<HTMLElement>("#graph-view")!;
    const membersView = root.querySelector<HTMLElement>("#members-view")!;
    graphView.hidden = state.session.view !== "graph";
    membersView.hidden = state.session.view !== "members";

    renderGraph(graphView, controller, state);
    renderMembers(membersView, controller, state);
    renderFbdd(root, controller, state);
    renderPins(root, controller, state);
}

function renderGraph(section: HTMLElement, controller: NavigatorController,
                     state: NavigatorState): void {
    section.textContent = "";
    const view = state.neighborhood;
    if (!view) {
        section.textContent = "focus a molecule or scaffold to start";
        return;
    }
    const width = 900;
    const rowHeight = 140;
    const svg = document.createElementNS(SVG_NS, "svg");
    svg.setAttribute("width", String(width));
    svg.setAttribute("height", String(rowHeight * 3));

    const positions = new Map<string, { x: number; y: number }>();
    for (const node of view.nodes) {
        const x = 60 + node.x * (width - 120);
        const y = rowHeight * (node.layer + 1) + 30;
        positions.set(node.key, { x, y });
    }
    for (const edge of view.edges) {
        const from = positions.get(edge.from)!;
        const to = positions.get(edge.to)!;
        const line = document.createElementNS(SVG_NS, "line");
        line.setAttribute("x1", String(from.x));
        line.setAttribute("y1", String(from.y));
        line.setAttribute("x2", String(to.x));
        line.setAttribute("y2", String(to.y));
        line.setAttribute("stroke", "#999");
        svg.appendChild(line);
    }
    for (const node of view.nodes) {
        const pos = positions.get(node.key)!;
        const group = document.createElementNS(SVG_NS, "g");
        const circle = document.createElementNS(SVG_NS, "circle");
        circle.setAttribute("cx", String(pos.x));
        circle.setAttribute("cy", String(pos.y));
        circle.setAttribute("r", node.role === "focus" ? "14" : "10");
        circle.setAttribute("fill", node.role === "focus" ? "#1f77b4"
            : node.virtual ? "#cccccc" : "#7fbf7f");
        group.appendChild(circle);
        const text = document.createElementNS(SVG_NS, "text");
        text.setAttribute("x", String(pos.x));
        text.setAttribute("y", String(pos.y + 28));
        text.setAttribute("text-anchor", "middle");
        text.setAttribute("font-size", "11");
        text.textContent =
            `${node.label} (n=${node.ringCount}, |class|=${node.classSize})`;
        group.appendChild(text);
        group.addEventListener("click", () => {
            if (node.role === "successor") {
                void controller.navigate("successor", node.key);
            } else if (node.role === "predecessor") {
                void controller.navigate("predecessor", node.key);
            } else {
                void controller.inspect(node.key);
            }
        });
        group.addEventListener("contextmenu", (event) => {
            event.preventDefault();
            controller.pin(node.key);
        });
        svg.appendChild(group);
    }
    section.appendChild(svg);
    const hint = document.createElement("p");
    hint.className = "hint";
    hint.textContent = view.predecessorsDisabled
        ? "no predecessors at this level"
        : "click a node to step; right-click pins it for growing";
    section.appendChild(hint);
}

function renderMembers(section: HTMLElement, controller: NavigatorController,
                       state: NavigatorState): void {
    section.textContent = "";
    const table = state.members;
    if (!table) {
        section.textContent = "no class inspected yet";
        return;
    }
    const heading = document.createElement("h3");
    heading.textContent =
        `${table.scaffoldKey || "(ring-less class)"} — ${table.total} members`;
    section.appendChild(heading);
    if (table.emptyState) {
        const empty = document.createElement("p");
        empty.className = "empty";
        empty.textContent = table.emptyState;
        section.appendChild(empty);
        return;
    }
    const element = document.createElement("table");
    element.innerHTML = "<tr><th>id</th><th>smiles</th><th>tag</th></tr>";
    for (const row of table.rows) {
        const tr = document.createElement("tr");
        for (const value of [String(row.id), row.smiles, row.sourceTag]) {
            const td = document.createElement("td");
            td.textContent = value;
            tr.appendChild(td);
        }
        element.appendChild(tr);
    }
    section.appendChild(element);
    const exportButton = document.createElement("button");
    exportButton.textContent = "export TSV";
    exportButton.addEventListener("click", () => {
        void navigator.clipboard.writeText(memberTsv(table));
    });
    section.appendChild(exportButton);
    if (table.nextCursor) {
        const more = document.createElement("button");
        more.textContent = "load more";
        more.addEventListener("click", () => {
            void controller.inspect(table.scaffoldKey, table.nextCursor!);
        });
        section.appendChild(more);
    }
}

function renderFbdd(root: HTMLElement, controller: NavigatorController,
                    state: NavigatorState): void {
    const results = root.querySelector<HTMLElement>("#fbdd-results")!;
    results.textContent = "";
    const panel = state.fbdd;
    if (!panel) return;
    if (panel.emptyState) {
        const empty = document.createElement("p");
        empty.className = "empty";
        empty.textContent = panel.emptyState;
        results.appendChild(empty);
        return;
    }
    const list = document.createElement("ul");
    for (const row of panel.rows) {
        const item = document.createElement("li");
        const link = document.createElement("a");
        link.href = "#";
        link.textContent =
            `${row.key} (n=${row.ringCount}, |class|=${row.classSize})`;
        link.addEventListener("click", (event) => {
            event.preventDefault();
            void controller.focusSmiles(row.key);
        });
        item.appendChild(link);
        list.appendChild(item);
    }
    results.appendChild(list);
    if (panel.truncated) {
        const note = document.createElement("p");
        note.textContent = "cone truncated upstream; results may be partial";
        results.appendChild(note);
    }
}

function renderPins(root: HTMLElement, controller: NavigatorController,
                    state: NavigatorState): void {
    const pins = root.querySelector<HTMLUListElement>("#pins")!;
    pins.textContent = "";
    for (const key of state.session.pinnedHits) {
        const item = document.createElement("li");
        item.textContent = key + " ";
        const remove = document.createElement("button");
        remove.textContent = "unpin";
        remove.addEventListener("click", () => controller.pin(key));
        item.appendChild(remove);
        pins.appendChild(item);
    }
}
