/* tslint:disable */
/* eslint-disable */

/**
 * Bound reports at `points` values of theta evenly spaced in `(0, pi]`,
 * skipping classes where the bound is undefined, with the theta -> 0 limit.
 */
export function bound_curve(family_name: string, n: number, points: number): string;

/**
 * The decomposition table of a family evaluated at `theta`.
 */
export function decomposition(family_name: string, n: number, theta: number): string;

/**
 * Histogram of `count` draws of `W` on `[-4, 4]`, with the Kolmogorov
 * distance to the standard normal compared against the stated bound.
 */
export function sample_histogram(family_name: string, n: number, count: number, seed: bigint, bins: number): string;

export type InitInput = RequestInfo | URL | Response | BufferSource | WebAssembly.Module;

export interface InitOutput {
    readonly memory: WebAssembly.Memory;
    readonly bound_curve: (a: number, b: number, c: number, d: number) => [number, number, number, number];
    readonly decomposition: (a: number, b: number, c: number, d: number) => [number, number, number, number];
    readonly sample_histogram: (a: number, b: number, c: number, d: number, e: bigint, f: number) => [number, number, number, number];
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
