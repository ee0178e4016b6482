/** Typed client for the query service. The filter serializer is the single
 * place that turns FilterState into request parameters, so every view's
 * request carries exactly the same server-side state. */

import type {
  ArticleResponse,
  ClustersResponse,
  DotsResponse,
  EventsResponse,
  FilterState,
  Note,
  NotesResponse,
  RegionSpanResponse,
  RelatedResponse,
  SearchResponse,
  SortKey,
  TimelineResponse,
  TopicsResponse,
} from "./types.js";

/** Serialize exactly the server-facing filter fields, in a stable order.
 * Defaults are omitted so URLs stay canonical and cacheable. */
export function serializeFilter(state: FilterState): URLSearchParams {
  const params = new URLSearchParams();
  if (state.from !== null) params.set("from", String(state.from));
  if (state.to !== null) params.set("to", String(state.to));
  if (state.bbox !== null) params.set("bbox", state.bbox.join(","));
  if (state.countries !== null && state.countries.length > 0) {
    params.set("countries", [...state.countries].sort().join(","));
  }
  if (state.topics !== null) {
    params.set("topics", [...state.topics].sort((a, b) => a - b).join(","));
  }
  if (state.mode !== "FREQ_DATE") params.set("mode", state.mode);
  if (state.normalized) params.set("normalized", "true");
  if (state.rec !== "TOPIC_REC") params.set("rec", state.rec);
  params.set("threshold", String(state.threshold));
  return params;
}

export type FetchLike = (url: string) => Promise<{
  ok: boolean;
  status: number;
  json(): Promise<unknown>;
}>;

export class ApiError extends Error {
  constructor(readonly status: number, message: string) {
    super(message);
  }
}

export class ApiClient {
  constructor(
    private readonly base: string,
    private readonly fetcher: FetchLike = (url) => fetch(url),
    private readonly poster: (url: string, body: unknown) => Promise<unknown> = defaultPost,
  ) {}

  private async get<T>(path: string, params?: URLSearchParams): Promise<T> {
    const qs = params && [...params.keys()].length ? `?${params.toString()}` : "";
    const resp = await this.fetcher(`${this.base}${path}${qs}`);
    if (!resp.ok) throw new ApiError(resp.status, `${path} -> ${resp.status}`);
    return (await resp.json()) as T;
  }

  topics(): Promise<TopicsResponse> {
    return this.get("/topics");
  }

  timeline(state: FilterState, topic: number | null): Promise<TimelineResponse> {
    const params = serializeFilter(state);
    if (topic !== null) params.set("topic", String(topic));
    return this.get("/timeline", params);
  }

  dots(state: FilterState, topic: number): Promise<DotsResponse> {
    const params = serializeFilter(state);
    params.set("topic", String(topic));
    return this.get("/dots", params);
  }

  clusters(state: FilterState, zoom: number): Promise<ClustersResponse> {
    const params = serializeFilter(state);
    params.set("zoom", String(zoom));
    return this.get("/clusters", params);
  }

  events(state: FilterState, sort: SortKey): Promise<EventsResponse> {
    const params = serializeFilter(state);
    params.set("sort", sort);
    return this.get("/events", params);
  }

  article(id: string): Promise<ArticleResponse> {
    return this.get(`/article/${encodeURIComponent(id)}`);
  }

  related(id: string, state: FilterState): Promise<RelatedResponse> {
    const params = serializeFilter(state);
    return this.get(`/related/${encodeURIComponent(id)}`, params);
  }

  search(state: FilterState, query: string): Promise<SearchResponse> {
    const params = serializeFilter(state);
    params.set("q", query);
    return this.get("/search", params);
  }

  regionSpan(state: FilterState): Promise<RegionSpanResponse> {
    return this.get("/region-span", serializeFilter(state));
  }

  notes(): Promise<NotesResponse> {
    return this.get("/notes");
  }

  async createNote(note: {
    article_id: string;
    title: string;
    keywords: string[];
    body: string;
  }): Promise<Note> {
    const doc = (await this.poster(`${this.base}/notes`, note)) as { note: Note };
    return doc.note;
  }
}

async function defaultPost(url: string, body: unknown): Promise<unknown> {
  const resp = await fetch(url, {
    method: "POST",
    headers: { "Content-Type": "application/json" },
    body: JSON.stringify(body),
  });
  if (!resp.ok) throw new ApiError(resp.status, `POST ${url} -> ${resp.status}`);
  return resp.json();
}
