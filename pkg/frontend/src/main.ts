/** Application entry point: wires the store, API client, coordinator and
 * the four views together. API base comes from `?api=` or defaults to the
 * local service port. */

import { ApiClient } from "./api.js";
import { Coordinator, ErrorSink } from "./coordinator.js";
import { FilterStore } from "./state.js";
import type { CountryShape, TopicsResponse } from "./types.js";
import { EventView } from "./views/eventView.js";
import { FilterView } from "./views/filterView.js";
import { MapView } from "./views/mapView.js";
import { ResourceView } from "./views/resourceView.js";

function apiBase(): string {
  const param = new URLSearchParams(window.location.search).get("api");
  return param ?? "http://127.0.0.1:8000";
}

function errorSink(): ErrorSink {
  const bar = document.getElementById("errors")!;
  return {
    apiError(context, error) {
      const note = document.createElement("div");
      note.className = "error-note";
      note.textContent = `${context}: ${String(error)} (stale data shown)`;
      bar.append(note);
      setTimeout(() => note.remove(), 6000);
    },
  };
}

async function loadCountries(): Promise<CountryShape[] | null> {
  try {
    const resp = await fetch("./countries.json");
    if (!resp.ok) return null;
    return (await resp.json()) as CountryShape[];
  } catch {
    return null; // country clicking disabled; box and search still work
  }
}

async function boot(): Promise<void> {
  const store = new FilterStore();
  const api = new ApiClient(apiBase());
  const countries = await loadCountries();

  let topicsDoc: TopicsResponse | null = null;

  const eventRoot = document.getElementById("event-view")!;
  const mapRoot = document.getElementById("map-view")!;
  const resourceRoot = document.getElementById("resource-view")!;
  const filterRoot = document.getElementById("filter-view")!;

  // two-phase init: views need the coordinator, which needs the views
  const panels: { event?: EventView; map?: MapView; resources?: ResourceView } = {};
  const coordinator = new Coordinator(
    api,
    store,
    {
      renderTopics: (t, v) => {
        topicsDoc = t;
        panels.event?.renderTopics(t, v);
      },
      renderSummary: (s, v) => panels.event?.renderSummary(s, v),
      renderTopicSeries: (t, s, d, v) => panels.event?.renderTopicSeries(t, s, d, v),
      renderRegionSpan: (s, v) => panels.event?.renderRegionSpan(s, v),
    },
    {
      renderClusters: (c, v) => panels.map?.renderClusters(c, v),
      recenterOn: (id, lat, lon) => panels.map?.recenterOn(id, lat, lon),
    },
    {
      renderList: (e, v) => panels.resources?.renderList(e, v),
      renderSearch: (r, v) => panels.resources?.renderSearch(r, v),
      renderNotes: (n, v) => panels.resources?.renderNotes(n, v),
      renderArticle: (a, v) => panels.resources?.renderArticle(a, v),
      highlightEntry: (id) => panels.resources?.highlightEntry(id),
      autoScrollArticle: (id) => panels.resources?.autoScrollArticle(id),
    },
    errorSink(),
  );

  panels.event = new EventView(eventRoot, coordinator);
  panels.map = new MapView(mapRoot, coordinator, countries);
  panels.resources = new ResourceView(resourceRoot, coordinator);
  panels.resources.useTopicKeywords(
    (topic) => topicsDoc?.topics.find((t) => t.topic === topic)?.keywords ?? [],
  );
  new FilterView(filterRoot, coordinator);

  document.addEventListener("eventatlas:save-note", (ev) => {
    const detail = (ev as CustomEvent).detail;
    void coordinator.createNote(detail).then(() => coordinator.refreshNotes());
  });

  await coordinator.start();
  await coordinator.refreshNotes();
}

void boot();
