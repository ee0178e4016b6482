/** Coordinated-views wiring.
 *
 * Any filter change triggers a refetch of every dependent view. Responses
 * carry the version of the filter that produced them; anything older than
 * the store's current version is discarded, and each panel records the
 * version it last rendered so consistency can be asserted at any time.
 * Hover/click coordination (map recenter, list highlight, article
 * auto-scroll) flows through three explicit side channels.
 */

import type { ApiClient } from "./api.js";
import { FilterStore } from "./state.js";
import type {
  ArticleResponse,
  ClustersResponse,
  DotsResponse,
  EventsResponse,
  FilterState,
  ListEntry,
  NotesResponse,
  RegionSpanResponse,
  SearchResponse,
  TimelineResponse,
  TopicsResponse,
} from "./types.js";

export interface EventViewPanel {
  renderTopics(topics: TopicsResponse, version: number): void;
  renderSummary(series: TimelineResponse, version: number): void;
  renderTopicSeries(topic: number, series: TimelineResponse, dots: DotsResponse, version: number): void;
  renderRegionSpan(span: [number, number] | null, version: number): void;
}

export interface MapPanel {
  renderClusters(clusters: ClustersResponse, version: number): void;
  /** Side channel: recenter on an article and spread its cluster open. */
  recenterOn(articleId: string, lat: number, lon: number): void;
}

export interface ResourcePanel {
  renderList(events: EventsResponse, version: number): void;
  renderSearch(results: SearchResponse, version: number): void;
  renderNotes(notes: NotesResponse, version: number): void;
  renderArticle(article: ArticleResponse, version: number): void;
  /** Side channel: highlight one list row (map circle was clicked). */
  highlightEntry(articleId: string): void;
  /** Side channel: scroll the article view to the event's passage. */
  autoScrollArticle(articleId: string): void;
}

export interface ErrorSink {
  apiError(context: string, error: unknown): void;
}

/** Panels keyed by article id or static data rather than the filter. */
const NON_FILTER_PANELS = new Set(["topics", "article", "notes"]);

export class Coordinator {
  /** Version each panel section last rendered; the CMV invariant is that
   * after requests settle all filter-dependent entries agree. */
  readonly renderedVersions = new Map<string, number>();
  private entriesById = new Map<string, ListEntry>();
  private topicCount = 0;
  private settling: Promise<void> = Promise.resolve();

  constructor(
    private readonly api: ApiClient,
    readonly store: FilterStore,
    private readonly eventView: EventViewPanel,
    private readonly map: MapPanel,
    private readonly resources: ResourcePanel,
    private readonly errors: ErrorSink = { apiError: () => undefined },
  ) {
    store.subscribe((state, version) => {
      this.settling = this.refresh(state, version);
    });
  }

  /** Resolves when the most recent refresh has settled. */
  whenSettled(): Promise<void> {
    return this.settling;
  }

  async start(): Promise<void> {
    const topics = await this.api.topics();
    this.topicCount = topics.k;
    if (this.store.local.chartOrder.length === 0) {
      this.store.local.chartOrder = topics.topics.map((t) => t.topic);
    }
    this.eventView.renderTopics(topics, this.store.version);
    this.renderedVersions.set("topics", this.store.version);
    this.settling = this.refresh(this.store.get(), this.store.version);
    await this.settling;
  }

  private stale(version: number): boolean {
    return version !== this.store.version;
  }

  private mark(panel: string, version: number): void {
    const previous = this.renderedVersions.get(panel);
    if (previous !== undefined && previous > version) {
      throw new Error(`panel ${panel} regressed from v${previous} to v${version}`);
    }
    this.renderedVersions.set(panel, version);
  }

  private async refresh(state: FilterState, version: number): Promise<void> {
    const visibleTopics = this.store.local.chartOrder.filter(
      (t) => !this.store.local.hiddenTopics.has(t),
    );
    // panels this filter will not render again must not hold stale stamps
    const expected = new Set([
      "summary", "clusters", "events", "region-span",
      ...visibleTopics.map((t) => `topic:${t}`),
      ...(state.q.trim() ? ["search"] : []),
    ]);
    for (const key of [...this.renderedVersions.keys()]) {
      if (!NON_FILTER_PANELS.has(key) && !expected.has(key)) {
        this.renderedVersions.delete(key);
      }
    }
    const tasks: Promise<void>[] = [
      this.guard("summary", version, this.api.timeline(state, null), (series) =>
        this.eventView.renderSummary(series, version),
      ),
      this.guard("clusters", version, this.api.clusters(state, this.store.local.zoom), (doc) =>
        this.map.renderClusters(doc, version),
      ),
      this.guard("events", version, this.api.events(state, this.store.local.sort), (doc) => {
        this.entriesById = new Map(doc.events.map((e) => [e.article_id, e]));
        this.resources.renderList(doc, version);
      }),
      this.refreshRegionSpan(state, version),
    ];
    for (const topic of visibleTopics) {
      tasks.push(
        this.guard(
          `topic:${topic}`,
          version,
          Promise.all([this.api.timeline(state, topic), this.api.dots(state, topic)]),
          ([series, dots]) => this.eventView.renderTopicSeries(topic, series, dots, version),
        ),
      );
    }
    if (state.q.trim()) {
      tasks.push(
        this.guard("search", version, this.api.search(state, state.q), (doc) =>
          this.resources.renderSearch(doc, version),
        ),
      );
    }
    await Promise.all(tasks);
  }

  private async refreshRegionSpan(state: FilterState, version: number): Promise<void> {
    if (state.bbox === null && state.countries === null) {
      this.eventView.renderRegionSpan(null, version);
      this.mark("region-span", version);
      return;
    }
    await this.guard("region-span", version, this.api.regionSpan(state), (doc: RegionSpanResponse) =>
      this.eventView.renderRegionSpan(doc.span, version),
    );
  }

  private async guard<T>(
    panel: string,
    version: number,
    request: Promise<T>,
    render: (data: T) => void,
  ): Promise<void> {
    let data: T;
    try {
      data = await request;
    } catch (error) {
      if (!this.stale(version)) this.errors.apiError(panel, error);
      return;
    }
    if (this.stale(version)) return; // a newer filter owns the screen now
    render(data);
    this.mark(panel, version);
  }

  /** True when every filter-dependent panel shows the same state version. */
  consistent(): boolean {
    const versions = new Set(
      [...this.renderedVersions.entries()]
        .filter(([panel]) => !NON_FILTER_PANELS.has(panel))
        .map(([, version]) => version),
    );
    return versions.size <= 1;
  }

  // --- user intents -------------------------------------------------------

  brushTimeRange(from: number | null, to: number | null): void {
    this.store.update({ from, to });
  }

  boxSelect(bbox: [number, number, number, number]): void {
    this.store.update({ bbox });
  }

  toggleCountry(code: string): void {
    const current = new Set(this.store.get().countries ?? []);
    if (current.has(code)) current.delete(code);
    else current.add(code);
    this.store.update({ countries: current.size ? [...current] : null });
  }

  clearRegion(): void {
    this.store.clearRegion();
  }

  setZoom(zoom: number): void {
    this.store.local.zoom = zoom;
    const state = this.store.get();
    const version = this.store.version;
    this.settling = this.guard("clusters", version, this.api.clusters(state, zoom), (doc) =>
      this.map.renderClusters(doc, version),
    );
  }

  /** List hover: recenter the map on the entry and spread its cluster. */
  hoverListEntry(articleId: string): void {
    this.store.local.hoveredArticle = articleId;
    void this.api
      .article(articleId)
      .then((doc) => {
        if (doc.lat !== null && doc.lon !== null) {
          this.map.recenterOn(articleId, doc.lat, doc.lon);
        }
      })
      .catch((error) => this.errors.apiError("hover", error));
  }

  /** Map circle click at max zoom: find and highlight the list row. */
  clickMapCircle(articleId: string): void {
    this.resources.highlightEntry(articleId);
  }

  /** Open an article in the reading pane, auto-scrolled to its passage. */
  async openArticle(articleId: string, autoScroll = false): Promise<void> {
    this.store.local.selectedArticle = articleId;
    const version = this.store.version;
    await this.guard("article", version, this.api.article(articleId), (doc) => {
      this.resources.renderArticle(doc, version);
      if (autoScroll) this.resources.autoScrollArticle(articleId);
    });
  }

  async refreshNotes(): Promise<void> {
    const version = this.store.version;
    await this.guard("notes", version, this.api.notes(), (doc) =>
      this.resources.renderNotes(doc, version),
    );
  }

  entry(articleId: string): ListEntry | undefined {
    return this.entriesById.get(articleId);
  }

  related(articleId: string) {
    return this.api.related(articleId, this.store.get());
  }

  createNote(note: { article_id: string; title: string; keywords: string[]; body: string }) {
    return this.api.createNote(note);
  }

  topics(): number {
    return this.topicCount;
  }
}
