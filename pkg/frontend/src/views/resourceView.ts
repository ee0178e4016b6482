/** Resource view: list, search-result, article and note sub-views. */

import type { Coordinator, ResourcePanel } from "../coordinator.js";
import type {
  ArticleResponse,
  EventsResponse,
  ListEntry,
  NotesResponse,
  SearchResponse,
  SortKey,
} from "../types.js";

export class ResourceView implements ResourcePanel {
  private list: HTMLElement;
  private results: HTMLElement;
  private article: HTMLElement;
  private notes: HTMLElement;
  private currentArticle: ArticleResponse | null = null;
  private keywordsOf: (topic: number | null) => string[] = () => [];

  constructor(private readonly root: HTMLElement, private readonly coordinator: Coordinator) {
    this.list = this.section("list", "events");
    this.results = this.section("results", "search results");
    this.article = this.section("article", "article");
    this.notes = this.section("notes", "notes");
    this.attachSortControl();
    document.addEventListener("eventatlas:new-note", () => this.noteForm());
  }

  useTopicKeywords(fn: (topic: number | null) => string[]): void {
    this.keywordsOf = fn;
  }

  private section(key: string, title: string): HTMLElement {
    const wrap = document.createElement("section");
    wrap.dataset.panel = key;
    const head = document.createElement("h3");
    head.textContent = title;
    const body = document.createElement("div");
    body.className = "panel-body";
    wrap.append(head, body);
    this.root.append(wrap);
    return body;
  }

  private attachSortControl(): void {
    const select = document.createElement("select");
    for (const key of ["date", "importance", "topic"] as SortKey[]) {
      const opt = document.createElement("option");
      opt.value = key;
      opt.textContent = `sort: ${key}`;
      select.append(opt);
    }
    select.addEventListener("change", () => {
      this.coordinator.store.setSort(select.value as SortKey);
      // sorting is server-side; re-request with the unchanged filter
      this.coordinator.store.update({});
    });
    this.list.parentElement!.querySelector("h3")!.append(select);
  }

  private entryRow(entry: ListEntry): HTMLElement {
    const row = document.createElement("div");
    row.className = entry.highlighted ? "entry highlighted" : "entry";
    row.dataset.articleId = entry.article_id;
    const title = document.createElement("a");
    title.textContent = entry.title;
    title.href = "#";
    title.addEventListener("click", (ev) => {
      ev.preventDefault();
      void this.coordinator.openArticle(entry.article_id, true);
    });
    const meta = document.createElement("span");
    meta.className = "entry-meta";
    meta.textContent =
      ` ${entry.date ?? "undated"} · T${entry.topic ?? "-"} ` +
      `w=${entry.topic_weight.toFixed(2)} pr=${entry.pagerank.toExponential(1)}`;
    row.append(title, meta);
    row.addEventListener("mouseenter", () => this.coordinator.hoverListEntry(entry.article_id));
    return row;
  }

  renderList(events: EventsResponse, _version: number): void {
    this.list.replaceChildren();
    for (const entry of events.events) this.list.append(this.entryRow(entry));
  }

  renderSearch(results: SearchResponse, _version: number): void {
    this.results.replaceChildren();
    if (results.status === "no_query") return;
    for (const entry of results.results) {
      const row = this.entryRow(entry);
      // clicking a result also pops up the most relevant other events
      row.querySelector("a")?.addEventListener("click", () => {
        void this.showRelated(entry.article_id);
      });
      this.results.append(row);
    }
  }

  renderArticle(article: ArticleResponse, _version: number): void {
    this.currentArticle = article;
    this.article.replaceChildren();
    const head = document.createElement("h4");
    head.textContent = article.title;
    const meta = document.createElement("p");
    meta.className = "entry-meta";
    meta.textContent = `${article.date ?? "undated"} · ${article.country ?? "unlocated"}`;
    const body = document.createElement("div");
    body.className = "article-text";
    body.textContent = article.text;
    const related = document.createElement("button");
    related.textContent = "related articles";
    related.addEventListener("click", () => void this.showRelated(article.article_id));
    this.article.append(head, meta, related, body);
  }

  /** Pop-up with the most relevant articles for the clicked event. */
  private async showRelated(articleId: string): Promise<void> {
    const doc = await this.coordinator.related(articleId);
    const pop = document.createElement("dialog");
    pop.className = "related-popup";
    const head = document.createElement("h4");
    head.textContent = `related to ${articleId} (${doc.mode})`;
    pop.append(head);
    for (const rel of doc.related) {
      const row = document.createElement("div");
      const link = document.createElement("a");
      link.href = "#";
      link.textContent = `${rel.title} (${rel.score.toFixed(3)})`;
      link.addEventListener("click", (ev) => {
        ev.preventDefault();
        pop.close();
        pop.remove();
        void this.coordinator.openArticle(rel.article_id, true);
      });
      row.append(link);
      pop.append(row);
    }
    document.body.append(pop);
    pop.showModal();
  }

  renderNotes(notes: NotesResponse, _version: number): void {
    this.notes.replaceChildren();
    for (const note of notes.notes) {
      const row = document.createElement("div");
      row.className = "note";
      const link = document.createElement("a");
      link.href = "#";
      link.textContent = note.title;
      link.title = "open the original article";
      link.addEventListener("click", (ev) => {
        ev.preventDefault();
        void this.coordinator.openArticle(note.article_id, true);
      });
      const meta = document.createElement("span");
      meta.className = "entry-meta";
      meta.textContent = ` ${note.keywords.join(", ")} · ${note.created_at.slice(0, 10)}`;
      row.append(link, meta, document.createElement("br"), document.createTextNode(note.body));
      this.notes.append(row);
    }
  }

  /** Note template: title, keywords (topic keywords offered), free text. */
  private noteForm(): void {
    const article = this.currentArticle;
    if (!article) return;
    const form = document.createElement("form");
    form.className = "note-form";
    const title = document.createElement("input");
    title.value = article.title;
    const keywords = document.createElement("input");
    keywords.placeholder = "keywords, comma separated";
    keywords.value = this.keywordsOf(article.topic).slice(0, 3).join(", ");
    const body = document.createElement("textarea");
    body.placeholder = "your note…";
    const save = document.createElement("button");
    save.textContent = "save note";
    save.addEventListener("click", (ev) => {
      ev.preventDefault();
      document.dispatchEvent(
        new CustomEvent("eventatlas:save-note", {
          detail: {
            article_id: article.article_id,
            title: title.value,
            keywords: keywords.value.split(",").map((s) => s.trim()).filter(Boolean),
            body: body.value,
          },
        }),
      );
      form.remove();
    });
    form.append(title, keywords, body, save);
    this.notes.prepend(form);
  }

  highlightEntry(articleId: string): void {
    for (const row of this.list.querySelectorAll<HTMLElement>(".entry")) {
      row.classList.toggle("focus", row.dataset.articleId === articleId);
      if (row.dataset.articleId === articleId) row.scrollIntoView({ block: "nearest" });
    }
  }

  /** Scroll the article text to the passage naming the event's anchor. */
  autoScrollArticle(articleId: string): void {
    const article = this.currentArticle;
    if (!article || article.article_id !== articleId) return;
    const target = article.location ?? article.date ?? "";
    if (!target) return;
    const pos = article.text.toLowerCase().indexOf(target.toLowerCase());
    const box = this.article.querySelector<HTMLElement>(".article-text");
    if (!box || pos < 0) return;
    box.scrollTop = (pos / Math.max(1, article.text.length)) * box.scrollHeight;
  }
}
