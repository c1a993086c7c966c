/* tslint:disable */
/* eslint-disable */

/**
 * JSON list of catalog entries with their generators and sample parameters.
 */
export function catalog(): string;

/**
 * Closure, catalog match and properness verdict for a generator list, one element per line.
 */
export function classify(text: string, seed: bigint): string;

/**
 * Orbit dimension and causal type of an entry through `point` (`"x,y,z,w"`).
 */
export function orbit_at(entry: string, params: string, point: string): string;

/**
 * Orbit sample through `point` as a flat array of `(x, y, z, w)` quadruples.
 */
export function orbit_cloud(entry: string, params: string, point: string, grid: number): Float64Array;

export type InitInput = RequestInfo | URL | Response | BufferSource | WebAssembly.Module;

export interface InitOutput {
    readonly memory: WebAssembly.Memory;
    readonly catalog: () => [number, number];
    readonly classify: (a: number, b: number, c: bigint) => [number, number, number, number];
    readonly orbit_at: (a: number, b: number, c: number, d: number, e: number, f: number) => [number, number, number, number];
    readonly orbit_cloud: (a: number, b: number, c: number, d: number, e: number, f: number, g: number) => [number, number, number, number];
    readonly __wbindgen_externrefs: WebAssembly.Table;
    readonly __wbindgen_free: (a: number, b: number, c: number) => void;
    readonly __wbindgen_malloc: (a: number, b: number) => number;
    readonly __wbindgen_realloc: (a: number, b: number, c: number, d: number) => number;
    readonly __externref_table_dealloc: (a: number) => void;
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
