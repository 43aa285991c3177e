/* tslint:disable */
/* eslint-disable */
export const memory: WebAssembly.Memory;
export const achromatic: (a: number) => [number, number];
export const dv_coloring: (a: number, b: number, c: number) => [number, number];
export const psi_lower: (a: number, b: number) => [number, number];
export const __wbindgen_externrefs: WebAssembly.Table;
export const __wbindgen_free: (a: number, b: number, c: number) => void;
export const __wbindgen_start: () => void;
