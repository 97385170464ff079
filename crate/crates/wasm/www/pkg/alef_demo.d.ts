/* tslint:disable */
/* eslint-disable */

export class RankView {
    private constructor();
    free(): void;
    [Symbol.dispose](): void;
    alef(): Float64Array;
    inDegree(): Float64Array;
    readonly alefCoverage: number;
    readonly edges: number;
    readonly inDegreeCoverage: number;
    /**
     * NaN when undefined.
     */
    readonly rho: number;
}

export function convergence(papers: number, mean_refs: number, seed: number, samples: Float64Array): Float64Array;

export function rankCorpus(papers: number, mean_refs: number, exponent: number, seed: number): RankView;

/**
 * Flattened `[w0, perf0, w1, perf1, ...]`.
 */
export function sweepCurve(papers: number, noise: number, steps: number, seed: number): Float64Array;

export type InitInput = RequestInfo | URL | Response | BufferSource | WebAssembly.Module;

export interface InitOutput {
    readonly memory: WebAssembly.Memory;
    readonly __wbg_rankview_free: (a: number, b: number) => void;
    readonly convergence: (a: number, b: number, c: number, d: number, e: number) => [number, number, number, number];
    readonly rankCorpus: (a: number, b: number, c: number, d: number) => [number, number, number];
    readonly rankview_alef: (a: number) => [number, number];
    readonly rankview_alefCoverage: (a: number) => number;
    readonly rankview_edges: (a: number) => number;
    readonly rankview_inDegree: (a: number) => [number, number];
    readonly rankview_inDegreeCoverage: (a: number) => number;
    readonly rankview_rho: (a: number) => number;
    readonly sweepCurve: (a: number, b: number, c: number, d: number) => [number, number, number, number];
    readonly __wbindgen_externrefs: WebAssembly.Table;
    readonly __wbindgen_malloc: (a: number, b: number) => number;
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
