/* tslint:disable */
/* eslint-disable */

/**
 * Evaluates `formula` at every face. `updates` is a JSON object mapping
 * names to update models, referenced as `[name.simplex]`.
 */
export function check(model_json: string, updates_json: string, formula: string): string;

/**
 * Vertices on a circle, grouped by agent, with the 1- and 2-faces.
 */
export function layout(model_json: string): string;

/**
 * Built-in models and update models: `{"models": {...}, "updates": {...}}`.
 */
export function presets(): string;

/**
 * `op` is `skeleton` (arg: dimension), `star` or `link` (arg: comma-separated
 * vertex ids).
 */
export function subcomplex(model_json: string, op: string, arg: string): string;

/**
 * Product update; returns the new model, or `null` when it is empty.
 */
export function update(model_json: string, update_json: string): string;

export type InitInput = RequestInfo | URL | Response | BufferSource | WebAssembly.Module;

export interface InitOutput {
    readonly memory: WebAssembly.Memory;
    readonly check: (a: number, b: number, c: number, d: number, e: number, f: number) => [number, number, number, number];
    readonly layout: (a: number, b: number) => [number, number, number, number];
    readonly presets: () => [number, number];
    readonly subcomplex: (a: number, b: number, c: number, d: number, e: number, f: number) => [number, number, number, number];
    readonly update: (a: number, b: number, c: number, d: number) => [number, number, number, number];
    readonly __wbindgen_externrefs: WebAssembly.Table;
    readonly __wbindgen_malloc: (a: number, b: number) => number;
    readonly __wbindgen_realloc: (a: number, b: number, c: number, d: number) => number;
    readonly __externref_table_dealloc: (a: number) => void;
    readonly __wbindgen_free: (a: number, b: number, c: number) => void;
    readonly __wbindgen_start: () => void;
}

export type SyncInitInput = BufferSource | WebAssembly.Module;

/**
 * Instantiates the given `module`, which can either be bytes or
 * a precompiled `WebAssembly.Module`.
 *
 * @param {{ module: SyncInitInput }} module - Passing `SyncInitInput` directly is deprecated.
 *
 * @returns {InitOutput}
 */
export function initSync(module: { module: SyncInitInput } | SyncInitInput): InitOutput;

/**
 * If `module_or_path` is {RequestInfo} or {URL}, makes a request and
 * for everything else, calls `WebAssembly.instantiate` directly.
 *
 * @param {{ module_or_path: InitInput | Promise<InitInput> }} module_or_path - Passing `InitInput` directly is deprecated.
 *
 * @returns {Promise<InitOutput>}
 */
export default function __wbg_init (module_or_path?: { module_or_path: InitInput | Promise<InitInput> } | InitInput | Promise<InitInput>): Promise<InitOutput>;
