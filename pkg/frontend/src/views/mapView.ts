/** Map view: cluster markers on an equirectangular SVG plane with zoom,
 * box region selection, country click targets (when geometry is present),
 * name search, and a refresh control that clears the region. */

import type { Coordinator, MapPanel } from "../coordinator.js";
import type { ClustersResponse, CountryShape, Marker } from "../types.js";

const SVG = "http://www.w3.org/2000/svg";
const WIDTH = 640;
const HEIGHT = 420;
const ZOOM_MIN = 0;
const ZOOM_MAX = 18;

export class MapView implements MapPanel {
  private svg: SVGSVGElement;
  private markerLayer: SVGGElement;
  private overlayLayer: SVGGElement;
  private countryLayer: SVGGElement;
  private spiderLayer: SVGGElement;
  private boxMode = false;
  private countries: CountryShape[] = [];
  private lastClusters: ClustersResponse | null = null;

  constructor(
    root: HTMLElement,
    private readonly coordinator: Coordinator,
    countries: CountryShape[] | null,
  ) {
    this.countries = countries ?? [];
    this.svg = document.createElementNS(SVG, "svg");
    this.svg.setAttribute("width", String(WIDTH));
    this.svg.setAttribute("height", String(HEIGHT));
    this.svg.setAttribute("class", "map-plane");
    this.countryLayer = document.createElementNS(SVG, "g");
    this.markerLayer = document.createElementNS(SVG, "g");
    this.overlayLayer = document.createElementNS(SVG, "g");
    this.spiderLayer = document.createElementNS(SVG, "g");
    this.svg.append(this.countryLayer, this.markerLayer, this.spiderLayer, this.overlayLayer);
    root.append(this.controls(), this.svg);
    this.drawCountries();
    this.attachBoxDraw();
    this.svg.addEventListener("wheel", (ev) => {
      ev.preventDefault();
      this.setZoom(this.zoom + (ev.deltaY < 0 ? 1 : -1));
    });
  }

  private get zoom(): number {
    return this.coordinator.store.local.zoom;
  }

  private get center(): [number, number] {
    return this.coordinator.store.local.center;
  }

  /** Plane projection around the current center; scale doubles per zoom. */
  private project(lat: number, lon: number): [number, number] {
    const scale = 2 ** this.zoom * (WIDTH / 360);
    const [clat, clon] = this.center;
    return [WIDTH / 2 + (lon - clon) * scale, HEIGHT / 2 - (lat - clat) * scale];
  }

  private unproject(x: number, y: number): [number, number] {
    const scale = 2 ** this.zoom * (WIDTH / 360);
    const [clat, clon] = this.center;
    return [clat - (y - HEIGHT / 2) / scale, clon + (x - WIDTH / 2) / scale];
  }

  private controls(): HTMLElement {
    const bar = document.createElement("div");
    bar.className = "map-controls";
    const btn = (label: string, title: string, onClick: () => void) => {
      const b = document.createElement("button");
      b.textContent = label;
      b.title = title;
      b.addEventListener("click", onClick);
      bar.append(b);
      return b;
    };
    btn("+", "zoom in", () => this.setZoom(this.zoom + 1));
    btn("-", "zoom out", () => this.setZoom(this.zoom - 1));
    const box = btn("box", "draw a region of interest", () => {
      this.boxMode = !this.boxMode;
      box.classList.toggle("active", this.boxMode);
    });
    btn("clear", "remove the region box", () => {
      this.overlayLayer.replaceChildren();
      this.coordinator.store.update({ bbox: null });
    });
    btn("refresh", "deselect all regions", () => {
      this.overlayLayer.replaceChildren();
      this.spiderLayer.replaceChildren();
      this.coordinator.clearRegion();
    });

    const search = document.createElement("input");
    search.type = "search";
    search.placeholder = "find region…";
    search.title = "Search country names; Enter selects";
    search.addEventListener("keydown", (ev) => {
      if (ev.key !== "Enter") return;
      const hit = this.countries.find(
        (c) => c.name.toLowerCase() === search.value.trim().toLowerCase(),
      );
      if (hit) {
        this.coordinator.store.local.center = [hit.lat, hit.lon];
        this.coordinator.toggleCountry(hit.code);
      }
    });
    if (this.countries.length === 0) {
      search.placeholder = "no geometry file";
    }
    bar.append(search);
    return bar;
  }

  private setZoom(zoom: number): void {
    const clamped = Math.max(ZOOM_MIN, Math.min(ZOOM_MAX, zoom));
    if (clamped !== this.zoom) this.coordinator.setZoom(clamped);
  }

  private drawCountries(): void {
    // country click targets exist only when the display geometry shipped
    for (const shape of this.countries) {
      const [x, y] = this.project(shape.lat, shape.lon);
      const label = document.createElementNS(SVG, "text");
      label.setAttribute("x", String(x));
      label.setAttribute("y", String(y));
      label.setAttribute("class", "country-label");
      label.textContent = shape.name;
      label.addEventListener("click", () => this.coordinator.toggleCountry(shape.code));
      this.countryLayer.append(label);
    }
  }

  renderClusters(clusters: ClustersResponse, _version: number): void {
    this.lastClusters = clusters;
    this.markerLayer.replaceChildren();
    this.countryLayer.replaceChildren();
    this.drawCountries();
    for (const marker of clusters.markers) {
      this.markerLayer.append(this.markerNode(marker, clusters.zoom));
    }
  }

  private markerNode(marker: Marker, zoom: number): SVGGElement {
    const g = document.createElementNS(SVG, "g");
    const [x, y] = this.project(marker.lat, marker.lon);
    const circle = document.createElementNS(SVG, "circle");
    const single = zoom >= ZOOM_MAX && marker.count === 1;
    circle.setAttribute("cx", String(x));
    circle.setAttribute("cy", String(y));
    circle.setAttribute("r", String(single ? 6 : 10 + Math.min(14, 2 * Math.sqrt(marker.count))));
    circle.setAttribute("class", single ? "event-circle" : "cluster-marker");
    g.append(circle);
    if (!single) {
      const label = document.createElementNS(SVG, "text");
      label.setAttribute("x", String(x));
      label.setAttribute("y", String(y + 4));
      label.setAttribute("class", "marker-count");
      label.textContent = String(marker.count);
      g.append(label);
    }
    g.addEventListener("click", () => {
      if (single && marker.members?.length === 1) {
        // a concrete event: highlight it in the list view
        this.coordinator.clickMapCircle(marker.members[0]);
        void this.coordinator.openArticle(marker.members[0], true);
      } else {
        this.coordinator.store.local.center = [marker.lat, marker.lon];
        this.setZoom(this.zoom + 1);
      }
    });
    if (single && marker.members?.length === 1) {
      const tip = document.createElementNS(SVG, "title");
      const entry = this.coordinator.entry(marker.members[0]);
      tip.textContent = entry ? `${entry.title} (${entry.date ?? "undated"})` : marker.members[0];
      g.append(tip);
    }
    return g;
  }

  private attachBoxDraw(): void {
    let start: [number, number] | null = null;
    let rect: SVGRectElement | null = null;
    this.svg.addEventListener("pointerdown", (ev) => {
      if (!this.boxMode) return;
      const bounds = this.svg.getBoundingClientRect();
      start = [ev.clientX - bounds.left, ev.clientY - bounds.top];
      rect = document.createElementNS(SVG, "rect");
      rect.setAttribute("class", "region-box");
      this.overlayLayer.replaceChildren(rect);
    });
    this.svg.addEventListener("pointermove", (ev) => {
      if (!start || !rect) return;
      const bounds = this.svg.getBoundingClientRect();
      const x = ev.clientX - bounds.left;
      const y = ev.clientY - bounds.top;
      rect.setAttribute("x", String(Math.min(start[0], x)));
      rect.setAttribute("y", String(Math.min(start[1], y)));
      rect.setAttribute("width", String(Math.abs(x - start[0])));
      rect.setAttribute("height", String(Math.abs(y - start[1])));
    });
    this.svg.addEventListener("pointerup", (ev) => {
      if (!start) return;
      const bounds = this.svg.getBoundingClientRect();
      const end: [number, number] = [ev.clientX - bounds.left, ev.clientY - bounds.top];
      const [lat1, lon1] = this.unproject(start[0], start[1]);
      const [lat2, lon2] = this.unproject(end[0], end[1]);
      start = null;
      this.boxMode = false;
      this.coordinator.boxSelect([
        Math.min(lat1, lat2),
        Math.min(lon1, lon2),
        Math.max(lat1, lat2),
        Math.max(lon1, lon2),
      ]);
    });
  }

  /** Side channel target: recenter and spread the article's cluster open. */
  recenterOn(articleId: string, lat: number, lon: number): void {
    this.coordinator.store.local.center = [lat, lon];
    this.spiderLayer.replaceChildren();
    const cluster = this.findCluster(articleId, lat, lon);
    if (!cluster) return;
    const [cx, cy] = this.project(cluster.lat, cluster.lon);
    const members = cluster.members ?? [];
    const ids = members.length ? members : [articleId];
    ids.forEach((member, i) => {
      const angle = (2 * Math.PI * i) / ids.length;
      const x = cx + 26 * Math.cos(angle);
      const y = cy + 26 * Math.sin(angle);
      const leg = document.createElementNS(SVG, "line");
      leg.setAttribute("x1", String(cx));
      leg.setAttribute("y1", String(cy));
      leg.setAttribute("x2", String(x));
      leg.setAttribute("y2", String(y));
      leg.setAttribute("class", "spider-leg");
      const node = document.createElementNS(SVG, "circle");
      node.setAttribute("cx", String(x));
      node.setAttribute("cy", String(y));
      node.setAttribute("r", "6");
      node.setAttribute("class", member === articleId ? "spider-node focus" : "spider-node");
      node.addEventListener("click", () => void this.coordinator.openArticle(member, true));
      this.spiderLayer.append(leg, node);
    });
  }

  private findCluster(articleId: string, lat: number, lon: number): Marker | null {
    if (!this.lastClusters) return null;
    for (const marker of this.lastClusters.markers) {
      if (marker.members?.includes(articleId)) return marker;
    }
    let best: Marker | null = null;
    let bestDist = Infinity;
    for (const marker of this.lastClusters.markers) {
      const d = (marker.lat - lat) ** 2 + (marker.lon - lon) ** 2;
      if (d < bestDist) {
        bestDist = d;
        best = marker;
      }
    }
    return best;
  }
}
