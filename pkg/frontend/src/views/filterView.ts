/** Top filter bar: normalization / date-mode / recommendation toggles,
 * threshold slider, keyword search, note shortcut. */

import type { Coordinator } from "../coordinator.js";

const REC_TOOLTIP: Record<string, string> = {
  TOPIC_REC:
    "Recommend by topic contribution: how strongly the article expresses its main topic.",
  POPULAR_REC:
    "Recommend by popularity: reader-navigation PageRank, rescaled to 0-1.",
};

export class FilterView {
  constructor(private readonly root: HTMLElement, private readonly coordinator: Coordinator) {
    this.render();
  }

  private toggle(label: string, title: string, onChange: (on: boolean) => void): HTMLElement {
    const wrap = document.createElement("label");
    wrap.className = "toggle";
    wrap.title = title;
    const box = document.createElement("input");
    box.type = "checkbox";
    box.addEventListener("change", () => onChange(box.checked));
    wrap.append(box, document.createTextNode(label));
    return wrap;
  }

  private render(): void {
    const { coordinator } = this;
    const store = coordinator.store;
    this.root.replaceChildren();

    this.root.append(
      this.toggle("normalize", "Scale every chart so its peak is 1", (on) =>
        store.update({ normalized: on }),
      ),
    );
    this.root.append(
      this.toggle(
        "all dates",
        "Count events at every mentioned year instead of only the representative one",
        (on) => store.update({ mode: on ? "ALL_DATE" : "FREQ_DATE" }),
      ),
    );

    const rec = document.createElement("button");
    rec.className = "rec-toggle";
    const syncRec = () => {
      const mode = store.get().rec;
      rec.textContent = mode;
      rec.title = REC_TOOLTIP[mode];
    };
    rec.addEventListener("click", () => {
      store.update({ rec: store.get().rec === "TOPIC_REC" ? "POPULAR_REC" : "TOPIC_REC" });
      syncRec();
    });
    syncRec();
    this.root.append(rec);

    const sliderWrap = document.createElement("label");
    sliderWrap.className = "slider";
    const slider = document.createElement("input");
    slider.type = "range";
    slider.min = "0";
    slider.max = "1";
    slider.step = "0.01";
    slider.value = String(store.get().threshold);
    const value = document.createElement("span");
    value.textContent = slider.value;
    slider.addEventListener("change", () => {
      value.textContent = slider.value;
      store.update({ threshold: Number(slider.value) });
    });
    sliderWrap.append(document.createTextNode("threshold"), slider, value);
    this.root.append(sliderWrap);

    const search = document.createElement("input");
    search.type = "search";
    search.placeholder = "search articles…";
    search.addEventListener("keydown", (ev) => {
      if (ev.key === "Enter") store.update({ q: search.value });
    });
    this.root.append(search);

    const note = document.createElement("button");
    note.textContent = "note";
    note.title = "Write a note about the selected article";
    note.addEventListener("click", () => {
      document.dispatchEvent(new CustomEvent("eventatlas:new-note"));
    });
    this.root.append(note);
  }
}
