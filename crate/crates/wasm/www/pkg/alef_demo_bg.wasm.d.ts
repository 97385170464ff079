/* tslint:disable */
/* eslint-disable */
export const memory: WebAssembly.Memory;
export const __wbg_rankview_free: (a: number, b: number) => void;
export const convergence: (a: number, b: number, c: number, d: number, e: number) => [number, number, number, number];
export const rankCorpus: (a: number, b: number, c: number, d: number) => [number, number, number];
export const rankview_alef: (a: number) => [number, number];
export const rankview_alefCoverage: (a: number) => number;
export const rankview_edges: (a: number) => number;
export const rankview_inDegree: (a: number) => [number, number];
export const rankview_inDegreeCoverage: (a: number) => number;
export const rankview_rho: (a: number) => number;
export const sweepCurve: (a: number, b: number, c: number, d: number) => [number, number, number, number];
export const __wbindgen_externrefs: WebAssembly.Table;
export const __wbindgen_malloc: (a: number, b: number) => number;
export const __externref_table_dealloc: (a: number) => void;
export const __wbindgen_free: (a: number, b: number, c: number) => void;
export const __wbindgen_start: () => void;
