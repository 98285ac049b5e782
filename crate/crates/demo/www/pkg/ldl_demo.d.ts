/* tslint:disable */
/* eslint-disable */

/**
 * p-diluted square with a box-decomposition tour and the strip tour.
 */
export function diluted_tour(side: number, p: number, seed: number, box_side: number): string;

/**
 * Random boundary-to-boundary paths in a box, uncrossed and then joined.
 */
export function uncross(side: number, paths: number, seed: number): string;

/**
 * Simple random walk on the plane: trajectory, range and inner boundary.
 */
export function walk(steps: number, seed: number): string;

export type InitInput = RequestInfo | URL | Response | BufferSource | WebAssembly.Module;

export interface InitOutput {
    readonly memory: WebAssembly.Memory;
    readonly diluted_tour: (a: number, b: number, c: number, d: number) => [number, number];
    readonly uncross: (a: number, b: number, c: number) => [number, number];
    readonly walk: (a: number, b: number) => [number, number];
    readonly __wbindgen_externrefs: WebAssembly.Table;
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
