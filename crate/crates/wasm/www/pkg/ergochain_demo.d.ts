/* tslint:disable */
/* eslint-disable */

/**
 * Last-site ergotropy on `steps + 1` equally spaced times in `[0, t_max]`.
 * Returns `[t0, e0, t1, e1, …]`.
 */
export function ergotropy_trace(n: number, alpha: number, coherent: boolean, theta: number, t_max: number, steps: number): Float64Array;

/**
 * Ergotropy delivered at the first reflection time for `N = 2..=n_max`,
 * as `[N, coherent, mixed, …]` with the mixed state matched in input.
 */
export function reflection_sweep(n_max: number, alpha: number, theta: number): Float64Array;

/**
 * Two-point-measurement work atoms for a fully excited first site, as
 * `[w0, p0, w1, p1, …]` in units of `J`.
 */
export function work_atoms(n: number, alpha: number): Float64Array;

export type InitInput = RequestInfo | URL | Response | BufferSource | WebAssembly.Module;

export interface InitOutput {
    readonly memory: WebAssembly.Memory;
    readonly ergotropy_trace: (a: number, b: number, c: number, d: number, e: number, f: number) => [number, number, number, number];
    readonly reflection_sweep: (a: number, b: number, c: number) => [number, number, number, number];
    readonly work_atoms: (a: number, b: number) => [number, number, number, number];
    readonly __wbindgen_externrefs: WebAssembly.Table;
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
