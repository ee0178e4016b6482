/** Shared types: the server filter, its local-only extensions, and the
 * wire payloads documented in docs/api.md. */

export type DateMode = "FREQ_DATE" | "ALL_DATE";
export type RecMode = "TOPIC_REC" | "POPULAR_REC";
export type SortKey = "date" | "importance" | "topic";

/** Exactly the state the server understands; every field serializes. */
export interface FilterState {
  from: number | null;
  to: number | null;
  /** min_lat, min_lon, max_lat, max_lon */
  bbox: [number, number, number, number] | null;
  countries: string[] | null;
  topics: number[] | null;
  mode: DateMode;
  normalized: boolean;
  rec: RecMode;
  threshold: number;
  q: string;
}

/** Client-only state; never serialized into requests. */
export interface LocalViewState {
  hoveredArticle: string | null;
  selectedArticle: string | null;
  selectedCluster: number | null;
  hiddenTopics: Set<number>;
  chartOrder: number[];
  zoom: number;
  center: [number, number];
  sort: SortKey;
  listScroll: number;
}

export function defaultFilter(): FilterState {
  return {
    from: null,
    to: null,
    bbox: null,
    countries: null,
    topics: null,
    mode: "FREQ_DATE",
    normalized: false,
    rec: "TOPIC_REC",
    threshold: 0.5,
    q: "",
  };
}

export interface TopicInfo {
  topic: number;
  order: number;
  keywords: string[];
}

export interface TopicsResponse {
  schema_version: number;
  k: number;
  coherence: number | null;
  topics: TopicInfo[];
}

export interface TimelineBin {
  year: number;
  value: number;
}

export interface TimelineResponse {
  schema_version: number;
  topic: number | null;
  mode: DateMode;
  normalized: boolean;
  bins: TimelineBin[];
}

export interface Dot {
  start_year: number;
  end_year: number;
  wide: boolean;
  members: string[];
}

export interface DotsResponse {
  schema_version: number;
  topic: number;
  window: number;
  dots: Dot[];
}

export interface Marker {
  lat: number;
  lon: number;
  count: number;
  members?: string[];
}

export interface ClustersResponse {
  schema_version: number;
  zoom: number;
  markers: Marker[];
}

export interface ListEntry {
  article_id: string;
  title: string;
  thumbnail: string | null;
  date: string | null;
  year: number | null;
  topic: number | null;
  topic_weight: number;
  pagerank: number;
  importance: number;
  highlighted: boolean;
}

export interface EventsResponse {
  schema_version: number;
  total: number;
  sort: SortKey;
  events: ListEntry[];
}

export interface ArticleResponse {
  schema_version: number;
  article_id: string;
  title: string;
  text: string;
  categories: string[];
  date: string | null;
  year: number | null;
  location: string | null;
  country: string | null;
  lat: number | null;
  lon: number | null;
  topic: number | null;
  topic_weight: number;
  pagerank: number;
  indexed: boolean;
}

export interface RelatedEntry {
  article_id: string;
  title: string;
  score: number;
}

export interface RelatedResponse {
  schema_version: number;
  article_id: string;
  mode: RecMode;
  related: RelatedEntry[];
}

export interface SearchResponse {
  schema_version: number;
  status: "ok" | "no_query";
  query: string;
  results: ListEntry[];
}

export interface Note {
  id: number;
  article_id: string;
  title: string;
  keywords: string[];
  body: string;
  created_at: string;
}

export interface NotesResponse {
  schema_version: number;
  notes: Note[];
}

export interface RegionSpanResponse {
  schema_version: number;
  span: [number, number] | null;
}

/** Optional display-only geometry for country click targets. */
export interface CountryShape {
  code: string;
  name: string;
  lat: number;
  lon: number;
  /** lon/lat rings; display only */
  polygon?: [number, number][];
}
