/** Single source of truth for the cross-view filter.
 *
 * Every change bumps a version; panels stamp what they rendered with that
 * version and in-flight responses for an older version are discarded, so
 * no two panels can show data from different filters once requests settle.
 */

import type { FilterState, LocalViewState, SortKey } from "./types.js";
import { defaultFilter } from "./types.js";

export type Listener = (state: FilterState, version: number) => void;

export class FilterStore {
  private state: FilterState = defaultFilter();
  private listeners = new Set<Listener>();
  version = 0;

  /** Local-only view state; never part of a server request. */
  readonly local: LocalViewState = {
    hoveredArticle: null,
    selectedArticle: null,
    selectedCluster: null,
    hiddenTopics: new Set<number>(),
    chartOrder: [],
    zoom: 2,
    center: [30, 10],
    sort: "date",
    listScroll: 0,
  };

  get(): FilterState {
    return { ...this.state };
  }

  update(partial: Partial<FilterState>): number {
    this.state = { ...this.state, ...partial };
    this.version += 1;
    const snapshot = this.get();
    for (const listener of this.listeners) listener(snapshot, this.version);
    return this.version;
  }

  /** Derive the topics filter from the hidden set (hidden = not visible). */
  setHiddenTopics(hidden: Set<number>, allTopics: number[]): number {
    this.local.hiddenTopics = hidden;
    const visible = allTopics.filter((t) => !hidden.has(t));
    return this.update({
      topics: hidden.size === 0 ? null : visible,
    });
  }

  setSort(sort: SortKey): void {
    this.local.sort = sort;
  }

  clearRegion(): number {
    return this.update({ bbox: null, countries: null });
  }

  subscribe(listener: Listener): () => void {
    this.listeners.add(listener);
    return () => this.listeners.delete(listener);
  }
}
