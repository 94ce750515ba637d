/**
 * Typed client for the cablebot JSON API.
 *
 * API_ROUTES mirrors the server's route table; the UI coverage test
 * asserts every non-debug route is wired to exactly one control.
 */

export type CoilId = "A" | "B" | "C" | "D";
export const COILS: CoilId[] = ["A", "B", "C", "D"];

export type JogDirection = "wind" | "unwind";
export type Axis = "x" | "y" | "z";
export type MoveSign = "+" | "-";

export interface CoilState {
  color: "green" | "orange" | "red";
  zeroed: boolean;
  fault: string | null;
  jogging: boolean;
}

export interface StatusPayload {
  lengths: Record<CoilId, number>;
  position: { x: number; y: number; z: number; residual: number; converged: boolean };
  coils: Record<CoilId, CoilState>;
  all_zeroed: boolean;
}

export interface SavedPositionPayload {
  id: number;
  label: string;
  point: [number, number, number];
}

export interface ConfigPayload {
  schema_version: number;
  ui_default_language: "en" | "fr";
  anchors: Record<CoilId, [number, number, number]>;
  winches: Record<CoilId, { home_length_l0: number; drum_radius_r: number; steps_per_turn: number }>;
  saved_positions: SavedPositionPayload[];
}

export interface TrilaterationInputs {
  dAB: number;
  dAC: number;
  dAD: number;
  dBC: number;
  dBD: number;
  dCD: number;
  planeHeight: number;
}

export interface TrilaterationSolution {
  anchors: Record<CoilId, [number, number, number]>;
  residual: number;
}

export interface RouteSpec {
  method: "GET" | "POST" | "PUT" | "DELETE";
  path: string; // with {coil} / {id} placeholders, as documented
  debugOnly: boolean;
}

export const API_ROUTES: RouteSpec[] = [
  { method: "GET", path: "/api/status", debugOnly: false },
  { method: "POST", path: "/api/coil/{coil}/half-turn", debugOnly: false },
  { method: "POST", path: "/api/coil/{coil}/jog", debugOnly: false },
  { method: "POST", path: "/api/coil/{coil}/stop", debugOnly: false },
  { method: "POST", path: "/api/coil/{coil}/zero", debugOnly: false },
  { method: "POST", path: "/api/coil/{coil}/fault", debugOnly: true },
  { method: "DELETE", path: "/api/coil/{coil}/fault", debugOnly: true },
  { method: "POST", path: "/api/move/axis", debugOnly: false },
  { method: "POST", path: "/api/move/goto", debugOnly: false },
  { method: "GET", path: "/api/positions", debugOnly: false },
  { method: "POST", path: "/api/positions", debugOnly: false },
  { method: "POST", path: "/api/positions/{id}/goto", debugOnly: false },
  { method: "DELETE", path: "/api/positions/{id}", debugOnly: false },
  { method: "POST", path: "/api/trilateration/solve", debugOnly: false },
  { method: "POST", path: "/api/trilateration/commit", debugOnly: false },
  { method: "GET", path: "/api/config", debugOnly: false },
  { method: "PUT", path: "/api/config", debugOnly: false },
];

/** Canonical placeholder form of a concrete request path, for coverage accounting. */
export function routeKeyFor(method: string, path: string): string {
  const canonical = path
    .replace(/\/api\/coil\/[A-Z]\//, "/api/coil/{coil}/")
    .replace(/\/api\/positions\/\d+$/, "/api/positions/{id}")
    .replace(/\/api\/positions\/\d+\/goto$/, "/api/positions/{id}/goto");
  return `${method} ${canonical}`;
}

/** Server-reported failure, carrying the stable machine-readable code. */
export class ApiCallError extends Error {
  constructor(
    public readonly code: string,
    message: string,
    public readonly status: number,
  ) {
    super(message);
  }
}

export type FetchLike = (input: string, init?: RequestInit) => Promise<Response>;

export class ApiClient {
  constructor(
    private readonly baseUrl: string = "",
    private readonly fetchFn: FetchLike = (input, init) => fetch(input, init),
  ) {}

  private async request<T>(method: string, path: string, body?: unknown): Promise<T> {
    const init: RequestInit = { method };
    if (body !== undefined) {
      init.headers = { "Content-Type": "application/json" };
      init.body = JSON.stringify(body);
    }
    const response = await this.fetchFn(this.baseUrl + path, init);
    const payload = await response.json();
    if (!response.ok) {
      throw new ApiCallError(
        typeof payload.code === "string" ? payload.code : "internal",
        typeof payload.message === "string" ? payload.message : "request failed",
        response.status,
      );
    }
    return payload as T;
  }

  getStatus(): Promise<StatusPayload> {
    return this.request("GET", "/api/status");
  }

  getConfig(): Promise<ConfigPayload> {
    return this.request("GET", "/api/config");
  }

  putConfig(config: ConfigPayload): Promise<ConfigPayload> {
    return this.request("PUT", "/api/config", config);
  }

  getPositions(): Promise<{ positions: SavedPositionPayload[] }> {
    return this.request("GET", "/api/positions");
  }

  savePosition(label: string): Promise<SavedPositionPayload> {
    return this.request("POST", "/api/positions", { label });
  }

  recallPosition(id: number): Promise<unknown> {
    return this.request("POST", `/api/positions/${id}/goto`);
  }

  deletePosition(id: number): Promise<unknown> {
    return this.request("DELETE", `/api/positions/${id}`);
  }

  halfTurn(coil: CoilId, direction: JogDirection): Promise<unknown> {
    return this.request("POST", `/api/coil/${coil}/half-turn`, { direction });
  }

  startJog(coil: CoilId, direction: JogDirection): Promise<unknown> {
    return this.request("POST", `/api/coil/${coil}/jog`, { direction });
  }

  stopJog(coil: CoilId): Promise<unknown> {
    return this.request("POST", `/api/coil/${coil}/stop`);
  }

  saveZero(coil: CoilId): Promise<unknown> {
    return this.request("POST", `/api/coil/${coil}/zero`);
  }

  injectFault(coil: CoilId, kind: string): Promise<unknown> {
    return this.request("POST", `/api/coil/${coil}/fault`, { kind });
  }

  clearFault(coil: CoilId): Promise<unknown> {
    return this.request("DELETE", `/api/coil/${coil}/fault`);
  }

  moveAxis(axis: Axis, sign: MoveSign): Promise<unknown> {
    return this.request("POST", "/api/move/axis", { axis, sign });
  }

  moveGoto(x: number, y: number, z: number, relative: boolean): Promise<unknown> {
    return this.request("POST", "/api/move/goto", { x, y, z, relative });
  }

  trilaterationSolve(inputs: TrilaterationInputs): Promise<TrilaterationSolution> {
    return this.request("POST", "/api/trilateration/solve", inputs);
  }

  trilaterationCommit(): Promise<unknown> {
    return this.request("POST", "/api/trilateration/commit");
  }
}
