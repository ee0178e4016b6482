/** Event view: one small line chart per topic with importance dots, plus
 * the summary chart with brush handles for time filtering. */

import type { Coordinator, EventViewPanel } from "../coordinator.js";
import { mergeDotsAtPixels } from "../merge.js";
import type { DotsResponse, TimelineResponse, TopicsResponse } from "../types.js";

const SVG = "http://www.w3.org/2000/svg";
const WIDTH = 560;
const HEIGHT = 64;
const SUMMARY_HEIGHT = 90;
const PAD = 28;
const DOT_RADIUS = 5;

interface YearScale {
  min: number;
  max: number;
  x(year: number): number;
  year(x: number): number;
}

function scaleOf(min: number, max: number): YearScale {
  const span = Math.max(1, max - min);
  return {
    min,
    max,
    x: (year) => PAD + ((year - min) / span) * (WIDTH - 2 * PAD),
    year: (x) => min + ((x - PAD) / (WIDTH - 2 * PAD)) * span,
  };
}

function polyline(bins: { year: number; value: number }[], scale: YearScale, height: number): SVGElement {
  const peak = Math.max(1e-9, ...bins.map((b) => b.value));
  const line = document.createElementNS(SVG, "polyline");
  line.setAttribute(
    "points",
    bins
      .map((b) => `${scale.x(b.year).toFixed(1)},${(height - 8 - (b.value / peak) * (height - 24)).toFixed(1)}`)
      .join(" "),
  );
  line.setAttribute("class", "series");
  return line;
}

export class EventView implements EventViewPanel {
  private charts = new Map<number, SVGSVGElement>();
  private keywords = new Map<number, string[]>();
  private summarySvg: SVGSVGElement | null = null;
  private scale: YearScale = scaleOf(1900, 2000);
  private span: [number, number] | null = null;
  private titleOf: (id: string) => string;

  constructor(
    private readonly root: HTMLElement,
    private readonly coordinator: Coordinator,
  ) {
    this.titleOf = (id) => coordinator.entry(id)?.title ?? id;
  }

  renderTopics(topics: TopicsResponse, _version: number): void {
    this.keywords = new Map(topics.topics.map((t) => [t.topic, t.keywords]));
  }

  renderSummary(series: TimelineResponse, version: number): void {
    const years = series.bins.map((b) => b.year);
    if (years.length) {
      this.scale = scaleOf(Math.min(...years), Math.max(...years));
    }
    const svg = this.chartShell("summary", "all events", SUMMARY_HEIGHT, version);
    if (series.bins.length) svg.append(polyline(series.bins, this.scale, SUMMARY_HEIGHT));
    this.attachBrush(svg);
    this.summarySvg = svg;
    this.drawRegionSpan();
  }

  renderTopicSeries(
    topic: number,
    series: TimelineResponse,
    dots: DotsResponse,
    version: number,
  ): void {
    const words = this.keywords.get(topic) ?? [];
    const label = `T${topic} ${words.slice(0, 10).join(" ")}`;
    const svg = this.chartShell(`topic-${topic}`, label, HEIGHT, version);
    if (series.bins.length) svg.append(polyline(series.bins, this.scale, HEIGHT));

    const merged = mergeDotsAtPixels(dots.dots, (y) => this.scale.x(y), DOT_RADIUS);
    for (const dot of merged) {
      const shape = document.createElementNS(SVG, dot.wide ? "rect" : "circle");
      shape.setAttribute("class", dot.wide ? "dot wide" : "dot");
      if (dot.wide) {
        shape.setAttribute("x", String(dot.xStart));
        shape.setAttribute("y", "4");
        shape.setAttribute("width", String(Math.max(2 * DOT_RADIUS, dot.xEnd - dot.xStart)));
        shape.setAttribute("height", String(2 * DOT_RADIUS));
        shape.setAttribute("rx", String(DOT_RADIUS));
      } else {
        shape.setAttribute("cx", String((dot.xStart + dot.xEnd) / 2));
        shape.setAttribute("cy", String(4 + DOT_RADIUS));
        shape.setAttribute("r", String(DOT_RADIUS));
      }
      const tip = document.createElementNS(SVG, "title");
      tip.textContent = dot.members.map(this.titleOf).join("\n");
      shape.append(tip);
      shape.addEventListener("click", () => {
        if (dot.members.length === 1) void this.coordinator.openArticle(dot.members[0]);
      });
      svg.append(shape);
    }
    this.charts.set(topic, svg);
  }

  renderRegionSpan(span: [number, number] | null, _version: number): void {
    this.span = span;
    this.drawRegionSpan();
  }

  private drawRegionSpan(): void {
    for (const svg of [this.summarySvg, ...this.charts.values()]) {
      if (!svg) continue;
      svg.querySelectorAll(".region-span").forEach((el) => el.remove());
      if (this.span === null) continue;
      const rect = document.createElementNS(SVG, "rect");
      const x0 = this.scale.x(this.span[0]);
      const x1 = this.scale.x(this.span[1]);
      rect.setAttribute("class", "region-span");
      rect.setAttribute("x", String(Math.min(x0, x1)));
      rect.setAttribute("width", String(Math.max(2, Math.abs(x1 - x0))));
      rect.setAttribute("y", "2");
      rect.setAttribute("height", String(svg.height.baseVal.value - 4));
      svg.append(rect);
    }
  }

  /** Create or replace one chart row, honoring hide/reorder controls. */
  private chartShell(key: string, label: string, height: number, version: number): SVGSVGElement {
    let row = this.root.querySelector<HTMLElement>(`[data-chart="${key}"]`);
    if (!row) {
      row = document.createElement("div");
      row.dataset.chart = key;
      row.className = "chart-row";
      const head = document.createElement("div");
      head.className = "chart-head";
      const title = document.createElement("span");
      title.className = "chart-title";
      head.append(title);
      if (key !== "summary") {
        head.append(
          this.chartButton("hide", () => this.hideTopic(Number(key.split("-")[1]))),
          this.chartButton("up", () => this.moveTopic(Number(key.split("-")[1]), -1)),
          this.chartButton("down", () => this.moveTopic(Number(key.split("-")[1]), +1)),
        );
      }
      row.append(head);
      const svg = document.createElementNS(SVG, "svg");
      svg.setAttribute("width", String(WIDTH));
      svg.setAttribute("height", String(height));
      row.append(svg);
      if (key === "summary") this.root.append(row);
      else this.root.insertBefore(row, this.root.querySelector('[data-chart="summary"]'));
      this.orderRows();
    }
    row.querySelector(".chart-title")!.textContent = label;
    row.dataset.version = String(version);
    const svg = row.querySelector("svg") as SVGSVGElement;
    svg.replaceChildren();
    return svg;
  }

  private chartButton(label: string, onClick: () => void): HTMLButtonElement {
    const btn = document.createElement("button");
    btn.className = "chart-btn";
    btn.textContent = label;
    btn.addEventListener("click", onClick);
    return btn;
  }

  private hideTopic(topic: number): void {
    const hidden = new Set(this.coordinator.store.local.hiddenTopics);
    hidden.add(topic);
    this.root.querySelector(`[data-chart="topic-${topic}"]`)?.remove();
    this.charts.delete(topic);
    this.coordinator.store.setHiddenTopics(hidden, this.coordinator.store.local.chartOrder);
  }

  private moveTopic(topic: number, delta: number): void {
    const order = this.coordinator.store.local.chartOrder;
    const i = order.indexOf(topic);
    const j = i + delta;
    if (i < 0 || j < 0 || j >= order.length) return;
    [order[i], order[j]] = [order[j], order[i]];
    this.orderRows();
  }

  private orderRows(): void {
    const summary = this.root.querySelector('[data-chart="summary"]');
    for (const topic of [...this.coordinator.store.local.chartOrder].reverse()) {
      const row = this.root.querySelector(`[data-chart="topic-${topic}"]`);
      if (row) this.root.insertBefore(row, this.root.firstChild);
    }
    if (summary) this.root.append(summary);
  }

  /** Brush: two vertical handles on the summary chart set the time range. */
  private attachBrush(svg: SVGSVGElement): void {
    const state = this.coordinator.store.get();
    const from = state.from ?? this.scale.min;
    const to = state.to ?? this.scale.max;
    const mk = (year: number, which: "from" | "to") => {
      const bar = document.createElementNS(SVG, "rect");
      bar.setAttribute("class", "brush-handle");
      bar.setAttribute("x", String(this.scale.x(year) - 3));
      bar.setAttribute("y", "0");
      bar.setAttribute("width", "6");
      bar.setAttribute("height", String(SUMMARY_HEIGHT));
      bar.addEventListener("pointerdown", (down) => {
        down.preventDefault();
        const move = (ev: PointerEvent) => {
          const rectBox = svg.getBoundingClientRect();
          bar.setAttribute("x", String(ev.clientX - rectBox.left - 3));
        };
        const up = (ev: PointerEvent) => {
          window.removeEventListener("pointermove", move);
          window.removeEventListener("pointerup", up);
          const rectBox = svg.getBoundingClientRect();
          const year = Math.round(this.scale.year(ev.clientX - rectBox.left));
          const cur = this.coordinator.store.get();
          if (which === "from") this.coordinator.brushTimeRange(year, cur.to ?? this.scale.max);
          else this.coordinator.brushTimeRange(cur.from ?? this.scale.min, year);
        };
        window.addEventListener("pointermove", move);
        window.addEventListener("pointerup", up);
      });
      return bar;
    };
    svg.append(mk(from, "from"), mk(to, "to"));
  }
}
