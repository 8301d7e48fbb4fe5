// Wire types for the /v1 scaffold-navigation API.

export interface ScaffoldEntry {
    key: string;
    ring_count: number;
    virtual: boolean;
    class_size: number;
}

export interface ScaffoldProjection {
    scaffold: string;
    ring_count: number;
    class_size: number;
    virtual: boolean;
    indexed: boolean;
}

export interface MemberRecord {
    id: number;
    smiles: string;
    source_tag: string | null;
}

export interface ExpandResponse {
    scaffold: string;
    total: number;
    members: MemberRecord[];
    next_cursor: string | null;
}

export interface SuccessorsResponse {
    scaffold: string;
    successors: ScaffoldEntry[];
}

export interface PredecessorsResponse {
    scaffold: string;
    predecessors: ScaffoldEntry[];
}

export interface ConeResponse {
    scaffold: string;
    members: string[];
    total: number;
    truncated: boolean;
    next_cursor: string | null;
}

export interface FbddResponse {
    scaffolds: ScaffoldEntry[];
    truncated: boolean;
}

export interface ApiErrorBody {
    code: "unknown_scaffold" | "parse_error" | "bad_request" |
          "truncated_upstream" | "internal";
    message: string;
    detail?: unknown;
}

export class ApiError extends Error {
    constructor(public status: number, public body: ApiErrorBody) {
        super(body.message);
    }
}
