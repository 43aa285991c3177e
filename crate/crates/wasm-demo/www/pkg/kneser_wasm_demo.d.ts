/* tslint:disable */
/* eslint-disable */

/**
 * Proper complete coloring of K(n,2) with the maximum number of colors.
 */
export function achromatic(n: number): string;

/**
 * Point set plus a proper complete coloring of its segment disjointness
 * graph. `random` selects seeded random points over the parabola.
 */
export function dv_coloring(n: number, random: boolean, seed: number): string;

/**
 * Complete (not necessarily proper) coloring of K(n,2) with C(n,2)/2 colors.
 */
export function psi_lower(n: number, seed: number): string;

export type InitInput = RequestInfo | URL | Response | BufferSource | WebAssembly.Module;

export interface InitOutput {
    readonly memory: WebAssembly.Memory;
    readonly achromatic: (a: number) => [number, number];
    readonly dv_coloring: (a: number, b: number, c: number) => [number, number];
    readonly psi_lower: (a: number, b: number) => [number, number];
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
