/**
 * The control panel: three pages (setup, calibration, control) sharing a
 * status block, all state polled from the service. Plain DOM, no
 * framework; every control maps 1:1 onto one API route.
 *
 * The DOM is built once. Page switches and language toggles only flip
 * visibility and text nodes, so unsent form input and fold state
 * survive both.
 */

import {
  ApiCallError,
  ApiClient,
  Axis,
  COILS,
  CoilId,
  ConfigPayload,
  FetchLike,
  JogDirection,
  MoveSign,
  SavedPositionPayload,
  StatusPayload,
  TrilaterationSolution,
} from "./api.js";
import { errorKeyFor, Language, MessageKey, translate } from "./i18n.js";

export type PageId = "setup" | "calibration" | "control";
export const PAGES: PageId[] = ["setup", "calibration", "control"];

export interface AppOptions {
  baseUrl?: string;
  fetchFn?: FetchLike;
  /** 0 disables the poll timer (tests drive refresh() themselves). */
  pollIntervalMs?: number;
  debug?: boolean;
  toastTimeoutMs?: number;
  language?: Language;
}

interface TriInputs {
  dAB: HTMLInputElement;
  dAC: HTMLInputElement;
  dAD: HTMLInputElement;
  dBC: HTMLInputElement;
  dBD: HTMLInputElement;
  dCD: HTMLInputElement;
  planeHeight: HTMLInputElement;
}

export class ControlPanelApp {
  readonly api: ApiClient;
  language: Language = "en";
  page: PageId = "control";
  connected = true;
  pending = false;

  private readonly root: HTMLElement;
  private readonly doc: Document;
  private readonly options: AppOptions;
  private timer: ReturnType<typeof setInterval> | null = null;
  private lastAction: Promise<void> = Promise.resolve();

  private folded = new Set<string>();
  private translatedText: Array<[HTMLElement, MessageKey]> = [];
  private translatedPlaceholders: Array<[HTMLInputElement, MessageKey]> = [];
  private pageRoots = new Map<PageId, HTMLElement>();
  private pageLinks = new Map<PageId, HTMLElement>();
  private langLinks = new Map<Language, HTMLElement>();

  private banner!: HTMLElement;
  private toastHost!: HTMLElement;
  private lengthCells = new Map<CoilId, HTMLElement>();
  private chipCells = new Map<CoilId, HTMLElement>();
  private stateCells = new Map<CoilId, HTMLElement>();
  private calibrationChips = new Map<CoilId, HTMLElement>();
  private positionLine!: HTMLElement;
  private residualLine!: HTMLElement;
  private convergedWarning!: HTMLElement;
  private saveLabelInput!: HTMLInputElement;
  private coordsTableBody!: HTMLElement;
  private savedTableBody!: HTMLElement;
  private triInputs!: TriInputs;
  private triResult!: HTMLElement;
  private gotoInputs!: { x: HTMLInputElement; y: HTMLInputElement; z: HTMLInputElement };
  private gotoRelative!: HTMLInputElement;

  private lastConfig: ConfigPayload | null = null;
  private lastSolution: TrilaterationSolution | null = null;

  constructor(root: HTMLElement, options: AppOptions = {}) {
    this.root = root;
    this.doc = root.ownerDocument;
    this.options = options;
    this.api = new ApiClient(options.baseUrl ?? "", options.fetchFn);
    if (options.language) {
      this.language = options.language;
    }
  }

  /** Fetch config (for the default language), build the DOM, start polling. */
  async start(): Promise<void> {
    try {
      this.lastConfig = await this.api.getConfig();
      if (!this.options.language) {
        this.language = this.lastConfig.ui_default_language;
      }
      this.connected = true;
    } catch {
      this.connected = false;
    }
    this.build();
    if (this.lastConfig) {
      this.renderConfig(this.lastConfig);
      this.renderPositions(this.lastConfig.saved_positions);
    }
    await this.refresh();
    const interval = this.options.pollIntervalMs ?? 500;
    if (interval > 0) {
      this.timer = setInterval(() => {
        void this.refresh();
      }, interval);
    }
  }

  stop(): void {
    if (this.timer !== null) {
      clearInterval(this.timer);
      this.timer = null;
    }
  }

  /** Poll path: GETs only. */
  async refresh(): Promise<void> {
    try {
      const [status, positions] = await Promise.all([
        this.api.getStatus(),
        this.api.getPositions(),
      ]);
      this.connected = true;
      this.renderStatus(status);
      this.renderPositions(positions.positions);
    } catch {
      this.connected = false;
    }
    this.renderConnection();
  }

  /** Resolves when the in-flight action (if any) has settled. */
  idle(): Promise<void> {
    return this.lastAction.then(() => undefined);
  }

  showPage(page: PageId): void {
    this.page = page;
    for (const [id, element] of this.pageRoots) {
      element.style.display = id === page ? "" : "none";
    }
    for (const [id, link] of this.pageLinks) {
      link.classList.toggle("active", id === page);
    }
  }

  setLanguage(language: Language): void {
    this.language = language;
    for (const [element, key] of this.translatedText) {
      element.textContent = translate(key, language);
    }
    for (const [input, key] of this.translatedPlaceholders) {
      input.placeholder = translate(key, language);
    }
    for (const [id, link] of this.langLinks) {
      link.classList.toggle("active", id === language);
    }
    this.renderSolution(this.lastSolution);
  }

  isFolded(blockId: string): boolean {
    return this.folded.has(blockId);
  }

  // --- actions ----------------------------------------------------------

  private runAction(run: () => Promise<unknown>): void {
    if (this.pending) {
      return;
    }
    this.lastAction = this.performAction(run);
  }

  private async performAction(run: () => Promise<unknown>): Promise<void> {
    this.setPending(true);
    try {
      await run();
      this.connected = true;
    } catch (error) {
      if (error instanceof ApiCallError) {
        this.connected = true;
        this.toastKey(errorKeyFor(error.code));
      } else {
        this.connected = false;
      }
    } finally {
      this.setPending(false);
      await this.refresh();
    }
  }

  private setPending(pending: boolean): void {
    this.pending = pending;
    this.renderConnection();
  }

  private renderConnection(): void {
    this.banner.style.display = this.connected ? "none" : "";
    const disable = this.pending || !this.connected;
    const buttons = this.root.querySelectorAll<HTMLButtonElement>(
      "button[data-mutating]",
    );
    buttons.forEach((button) => {
      button.disabled = disable;
    });
  }

  toastKey(key: MessageKey): void {
    this.toastText(translate(key, this.language));
  }

  private toastText(message: string): void {
    const toast = this.doc.createElement("div");
    toast.className = "toast";
    toast.setAttribute("data-testid", "toast");
    toast.textContent = message;
    this.toastHost.appendChild(toast);
    const timeout = this.options.toastTimeoutMs ?? 3000;
    setTimeout(() => toast.remove(), timeout);
  }

  // --- rendering ----------------------------------------------------------

  private renderStatus(status: StatusPayload): void {
    for (const coil of COILS) {
      const length = status.lengths[coil];
      this.lengthCells.get(coil)!.textContent = length.toFixed(2);
      const state = status.coils[coil];
      for (const chip of [this.chipCells.get(coil)!, this.calibrationChips.get(coil)!]) {
        chip.className = `chip chip-${state.color}`;
      }
      const words: string[] = [];
      words.push(translate(state.zeroed ? "state_zeroed" : "state_not_zeroed", this.language));
      if (state.fault) {
        words.push(`${translate("state_fault", this.language)}: ${state.fault}`);
      }
      if (state.jogging) {
        words.push(translate("state_jogging", this.language));
      }
      this.stateCells.get(coil)!.textContent = words.join(", ");
    }
    const p = status.position;
    this.positionLine.textContent =
      `(${p.x.toFixed(2)}, ${p.y.toFixed(2)}, ${p.z.toFixed(2)}) cm`;
    this.positionLine.classList.toggle("dim", !p.converged);
    this.residualLine.textContent =
      `${translate("status_residual", this.language)}: ${p.residual.toExponential(2)} cm`;
    this.convergedWarning.style.display = p.converged ? "none" : "";
  }

  private renderPositions(positions: SavedPositionPayload[]): void {
    this.savedTableBody.textContent = "";
    if (positions.length === 0) {
      const row = this.doc.createElement("tr");
      const cell = this.doc.createElement("td");
      cell.colSpan = 4;
      cell.className = "muted";
      cell.textContent = translate("saved_empty", this.language);
      row.appendChild(cell);
      this.savedTableBody.appendChild(row);
      return;
    }
    for (const saved of positions) {
      const row = this.doc.createElement("tr");
      const label = this.doc.createElement("td");
      label.textContent = saved.label || `#${saved.id}`;
      const coords = this.doc.createElement("td");
      coords.textContent = saved.point.map((v) => v.toFixed(1)).join(", ");
      const goCell = this.doc.createElement("td");
      goCell.appendChild(this.button("saved_goto", `saved-goto-${saved.id}`, () =>
        this.api.recallPosition(saved.id),
      ));
      const deleteCell = this.doc.createElement("td");
      deleteCell.appendChild(this.button("saved_delete", `saved-delete-${saved.id}`, () =>
        this.api.deletePosition(saved.id),
      ));
      row.append(label, coords, goCell, deleteCell);
      this.savedTableBody.appendChild(row);
    }
    this.renderConnection(); // new buttons inherit the disabled state
  }

  private renderConfig(config: ConfigPayload): void {
    this.lastConfig = config;
    this.coordsTableBody.textContent = "";
    for (const coil of COILS) {
      const xyz = config.anchors[coil];
      if (!xyz) {
        continue;
      }
      const row = this.doc.createElement("tr");
      const name = this.doc.createElement("td");
      name.textContent = coil;
      row.appendChild(name);
      for (const value of xyz) {
        const cell = this.doc.createElement("td");
        cell.textContent = value.toFixed(2);
        row.appendChild(cell);
      }
      this.coordsTableBody.appendChild(row);
    }
  }

  private renderSolution(solution: TrilaterationSolution | null): void {
    this.lastSolution = solution;
    this.triResult.textContent = "";
    if (!solution) {
      return;
    }
    const title = this.doc.createElement("div");
    title.className = "muted";
    title.textContent = translate("tri_pending", this.language);
    this.triResult.appendChild(title);
    for (const coil of COILS) {
      const line = this.doc.createElement("div");
      const xyz = solution.anchors[coil];
      line.textContent = `${coil}: (${xyz.map((v) => v.toFixed(3)).join(", ")})`;
      this.triResult.appendChild(line);
    }
    const residual = this.doc.createElement("div");
    residual.textContent =
      `${translate("tri_residual", this.language)}: ${solution.residual.toExponential(2)} cm`;
    this.triResult.appendChild(residual);
  }

  // --- DOM construction -----------------------------------------------------

  private text(tag: string, key: MessageKey, className = ""): HTMLElement {
    const element = this.doc.createElement(tag);
    if (className) {
      element.className = className;
    }
    element.textContent = translate(key, this.language);
    this.translatedText.push([element, key]);
    return element;
  }

  private button(
    key: MessageKey | null,
    control: string,
    run: () => Promise<unknown>,
    literal?: string,
  ): HTMLButtonElement {
    const button = this.doc.createElement("button");
    if (key) {
      button.textContent = translate(key, this.language);
      this.translatedText.push([button, key]);
    } else {
      button.textContent = literal ?? "";
    }
    button.setAttribute("data-control", control);
    button.setAttribute("data-mutating", "");
    button.addEventListener("click", () => this.runAction(run));
    return button;
  }

  private numberInput(control: string, placeholderKey?: MessageKey): HTMLInputElement {
    const input = this.doc.createElement("input");
    input.type = "text";
    input.inputMode = "decimal";
    input.setAttribute("data-control", control);
    if (placeholderKey) {
      input.placeholder = translate(placeholderKey, this.language);
      this.translatedPlaceholders.push([input, placeholderKey]);
    }
    return input;
  }

  private block(blockId: string, titleKey: MessageKey): { root: HTMLElement; body: HTMLElement } {
    const section = this.doc.createElement("section");
    section.className = "block";
    section.setAttribute("data-block", blockId);
    const header = this.doc.createElement("div");
    header.className = "block-header";
    const fold = this.doc.createElement("button");
    fold.className = "fold";
    fold.setAttribute("data-control", `fold-${blockId}`);
    fold.textContent = "▾";
    header.appendChild(fold);
    header.appendChild(this.text("h2", titleKey));
    const body = this.doc.createElement("div");
    body.className = "block-body";
    fold.addEventListener("click", () => {
      if (this.folded.has(blockId)) {
        this.folded.delete(blockId);
      } else {
        this.folded.add(blockId);
      }
      const nowFolded = this.folded.has(blockId);
      body.style.display = nowFolded ? "none" : "";
      fold.textContent = nowFolded ? "▸" : "▾";
    });
    section.append(header, body);
    return { root: section, body };
  }

  private build(): void {
    this.root.textContent = "";

    this.banner = this.doc.createElement("div");
    this.banner.className = "banner";
    this.banner.setAttribute("data-testid", "banner");
    this.banner.style.display = "none";
    this.translatedText.push([this.banner, "banner_disconnected"]);
    this.banner.textContent = translate("banner_disconnected", this.language);
    this.root.appendChild(this.banner);

    this.toastHost = this.doc.createElement("div");
    this.toastHost.className = "toast-host";
    this.root.appendChild(this.toastHost);

    this.root.appendChild(this.buildTopBar());
    this.root.appendChild(this.buildStatusBlock());

    const pageHost = this.doc.createElement("div");
    this.root.appendChild(pageHost);
    pageHost.appendChild(this.buildSetupPage());
    pageHost.appendChild(this.buildCalibrationPage());
    pageHost.appendChild(this.buildControlPage());

    this.showPage(this.page);
    this.setLanguage(this.language);
  }

  private buildTopBar(): HTMLElement {
    const bar = this.doc.createElement("header");
    bar.className = "topbar";
    bar.appendChild(this.text("h1", "title"));
    const nav = this.doc.createElement("nav");
    const pageKeys: Record<PageId, MessageKey> = {
      setup: "page_setup",
      calibration: "page_calibration",
      control: "page_control",
    };
    for (const page of PAGES) {
      const link = this.text("a", pageKeys[page], "nav-link");
      link.setAttribute("data-control", `page-${page}`);
      link.addEventListener("click", () => this.showPage(page));
      this.pageLinks.set(page, link);
      nav.appendChild(link);
    }
    const langBox = this.doc.createElement("span");
    langBox.className = "lang-box";
    langBox.appendChild(this.text("span", "lang_label"));
    for (const language of ["en", "fr"] as Language[]) {
      const link = this.doc.createElement("a");
      link.className = "nav-link";
      link.textContent = language.toUpperCase();
      link.setAttribute("data-control", `lang-${language}`);
      link.addEventListener("click", () => this.setLanguage(language));
      this.langLinks.set(language, link);
      langBox.appendChild(link);
    }
    nav.appendChild(langBox);
    bar.appendChild(nav);
    return bar;
  }

  private buildStatusBlock(): HTMLElement {
    const { root, body } = this.block("status", "block_status");
    const table = this.doc.createElement("table");
    const head = this.doc.createElement("tr");
    head.append(
      this.text("th", "status_cable"),
      this.text("th", "status_length"),
      this.text("th", "status_state"),
    );
    table.appendChild(head);
    for (const coil of COILS) {
      const row = this.doc.createElement("tr");
      const name = this.doc.createElement("td");
      const chip = this.doc.createElement("span");
      chip.className = "chip chip-orange";
      chip.setAttribute("data-testid", `chip-${coil}`);
      name.append(chip, this.doc.createTextNode(` ${coil}`));
      const length = this.doc.createElement("td");
      length.setAttribute("data-testid", `length-${coil}`);
      length.textContent = "–";
      const state = this.doc.createElement("td");
      state.className = "muted";
      row.append(name, length, state);
      table.appendChild(row);
      this.lengthCells.set(coil, length);
      this.chipCells.set(coil, chip);
      this.stateCells.set(coil, state);
    }
    body.appendChild(table);

    const positionBox = this.doc.createElement("div");
    positionBox.appendChild(this.text("div", "status_position", "muted"));
    this.positionLine = this.doc.createElement("div");
    this.positionLine.className = "position";
    this.positionLine.setAttribute("data-testid", "position");
    this.residualLine = this.doc.createElement("div");
    this.residualLine.className = "muted";
    this.convergedWarning = this.text("div", "status_not_converged", "warning");
    this.convergedWarning.style.display = "none";
    positionBox.append(this.positionLine, this.residualLine, this.convergedWarning);
    body.appendChild(positionBox);

    const saveRow = this.doc.createElement("div");
    saveRow.className = "row";
    this.saveLabelInput = this.numberInput("status-save-label", "status_save_placeholder");
    this.saveLabelInput.inputMode = "text";
    saveRow.appendChild(this.saveLabelInput);
    saveRow.appendChild(this.button("status_save", "status-save", async () => {
      await this.api.savePosition(this.saveLabelInput.value.trim());
      this.saveLabelInput.value = "";
    }));
    body.appendChild(saveRow);
    return root;
  }

  private buildSetupPage(): HTMLElement {
    const page = this.doc.createElement("div");
    page.setAttribute("data-page", "setup");
    this.pageRoots.set("setup", page);

    const coords = this.block("coords", "block_coords");
    const table = this.doc.createElement("table");
    const head = this.doc.createElement("tr");
    head.appendChild(this.text("th", "coords_coil"));
    for (const axis of ["x", "y", "z"]) {
      const th = this.doc.createElement("th");
      th.textContent = axis;
      head.appendChild(th);
    }
    table.appendChild(head);
    this.coordsTableBody = this.doc.createElement("tbody");
    table.appendChild(this.coordsTableBody);
    coords.body.appendChild(table);
    page.appendChild(coords.root);

    const tri = this.block("trilateration", "block_trilateration");
    tri.body.appendChild(this.text("p", "tri_hint", "muted"));
    const grid = this.doc.createElement("div");
    grid.className = "tri-grid";
    const fields: Array<[keyof TriInputs, string]> = [
      ["dAB", "A–B"], ["dAC", "A–C"], ["dAD", "A–D"],
      ["dBC", "B–C"], ["dBD", "B–D"], ["dCD", "C–D"],
    ];
    const inputs = {} as TriInputs;
    for (const [name, label] of fields) {
      const wrap = this.doc.createElement("label");
      const span = this.doc.createElement("span");
      span.textContent = label;
      const input = this.numberInput(`tri-${name}`);
      inputs[name] = input;
      wrap.append(span, input);
      grid.appendChild(wrap);
    }
    const heightWrap = this.doc.createElement("label");
    heightWrap.appendChild(this.text("span", "tri_plane_height"));
    inputs.planeHeight = this.numberInput("tri-planeHeight");
    heightWrap.appendChild(inputs.planeHeight);
    grid.appendChild(heightWrap);
    this.triInputs = inputs;
    tri.body.appendChild(grid);

    const buttons = this.doc.createElement("div");
    buttons.className = "row";
    buttons.appendChild(this.button("tri_solve", "tri-solve", async () => {
      const values = this.readTriInputs();
      if (!values) {
        this.toastKey("tri_invalid");
        return;
      }
      this.renderSolution(await this.api.trilaterationSolve(values));
    }));
    buttons.appendChild(this.button("tri_commit", "tri-commit", async () => {
      await this.api.trilaterationCommit();
      this.renderSolution(null);
      this.renderConfig(await this.api.getConfig());
    }));
    tri.body.appendChild(buttons);
    this.triResult = this.doc.createElement("div");
    this.triResult.className = "tri-result";
    this.triResult.setAttribute("data-testid", "tri-result");
    tri.body.appendChild(this.triResult);
    page.appendChild(tri.root);

    const langRow = this.doc.createElement("div");
    langRow.className = "row";
    langRow.appendChild(this.button("lang_save_default", "lang-save-default", async () => {
      const config = this.lastConfig ?? (await this.api.getConfig());
      const updated = { ...config, ui_default_language: this.language };
      this.renderConfig(await this.api.putConfig(updated));
      this.toastKey("lang_saved");
    }));
    page.appendChild(langRow);
    return page;
  }

  private buildCalibrationPage(): HTMLElement {
    const page = this.doc.createElement("div");
    page.setAttribute("data-page", "calibration");
    this.pageRoots.set("calibration", page);
    const { root, body } = this.block("calibration", "block_calibration");
    body.appendChild(this.text("p", "calibration_hint", "muted"));
    for (const coil of COILS) {
      const row = this.doc.createElement("div");
      row.className = "row coil-row";
      const chip = this.doc.createElement("span");
      chip.className = "chip chip-orange";
      chip.setAttribute("data-testid", `cal-chip-${coil}`);
      const name = this.doc.createElement("strong");
      name.textContent = coil;
      row.append(chip, name);
      this.calibrationChips.set(coil, chip);
      row.appendChild(this.button("wind", `jog-wind-${coil}`, () =>
        this.api.startJog(coil, "wind" as JogDirection),
      ));
      row.appendChild(this.button("unwind", `jog-unwind-${coil}`, () =>
        this.api.startJog(coil, "unwind" as JogDirection),
      ));
      row.appendChild(this.button("stop", `jog-stop-${coil}`, () =>
        this.api.stopJog(coil),
      ));
      row.appendChild(this.button("save_zero", `zero-${coil}`, () =>
        this.api.saveZero(coil),
      ));
      if (this.options.debug) {
        row.appendChild(this.button("inject_fault", `fault-${coil}`, () =>
          this.api.injectFault(coil, "comm_failure"),
        ));
        row.appendChild(this.button("clear_fault", `fault-clear-${coil}`, () =>
          this.api.clearFault(coil),
        ));
      }
      body.appendChild(row);
    }
    page.appendChild(root);
    return page;
  }

  private buildControlPage(): HTMLElement {
    const page = this.doc.createElement("div");
    page.setAttribute("data-page", "control");
    this.pageRoots.set("control", page);

    const coils = this.block("half-turns", "block_half_turns");
    coils.body.appendChild(this.text("p", "half_turn_hint", "muted"));
    for (const coil of COILS) {
      const row = this.doc.createElement("div");
      row.className = "row coil-row";
      const name = this.doc.createElement("strong");
      name.textContent = coil;
      row.appendChild(name);
      row.appendChild(this.button("wind", `half-turn-wind-${coil}`, () =>
        this.api.halfTurn(coil, "wind"),
      ));
      row.appendChild(this.button("unwind", `half-turn-unwind-${coil}`, () =>
        this.api.halfTurn(coil, "unwind"),
      ));
      coils.body.appendChild(row);
    }
    page.appendChild(coils.root);

    const axis = this.block("axis", "block_axis");
    axis.body.appendChild(this.text("p", "axis_hint", "muted"));
    for (const axisName of ["x", "y", "z"] as Axis[]) {
      const row = this.doc.createElement("div");
      row.className = "row";
      for (const sign of ["+", "-"] as MoveSign[]) {
        const label = `${sign}${axisName}`;
        const control = `axis-${axisName}-${sign === "+" ? "plus" : "minus"}`;
        row.appendChild(this.button(null, control, () =>
          this.api.moveAxis(axisName, sign), label,
        ));
      }
      axis.body.appendChild(row);
    }
    page.appendChild(axis.root);

    const goto = this.block("goto", "block_goto");
    const form = this.doc.createElement("div");
    form.className = "row";
    const labels: Array<["x" | "y" | "z", MessageKey]> = [
      ["x", "goto_x"], ["y", "goto_y"], ["z", "goto_z"],
    ];
    const gotoInputs = {} as { x: HTMLInputElement; y: HTMLInputElement; z: HTMLInputElement };
    for (const [axisName, key] of labels) {
      const wrap = this.doc.createElement("label");
      wrap.appendChild(this.text("span", key));
      const input = this.numberInput(`goto-${axisName}`);
      gotoInputs[axisName] = input;
      wrap.appendChild(input);
      form.appendChild(wrap);
    }
    this.gotoInputs = gotoInputs;
    const relativeWrap = this.doc.createElement("label");
    relativeWrap.className = "checkbox";
    this.gotoRelative = this.doc.createElement("input");
    this.gotoRelative.type = "checkbox";
    this.gotoRelative.setAttribute("data-control", "goto-relative");
    relativeWrap.appendChild(this.gotoRelative);
    relativeWrap.appendChild(this.text("span", "goto_relative"));
    form.appendChild(relativeWrap);
    form.appendChild(this.button("goto_go", "goto-go", async () => {
      const x = Number(this.gotoInputs.x.value);
      const y = Number(this.gotoInputs.y.value);
      const z = Number(this.gotoInputs.z.value);
      if (![x, y, z].every(Number.isFinite)
          || [this.gotoInputs.x, this.gotoInputs.y, this.gotoInputs.z]
            .some((input) => input.value.trim() === "")) {
        this.toastKey("goto_invalid");
        return;
      }
      await this.api.moveGoto(x, y, z, this.gotoRelative.checked);
    }));
    goto.body.appendChild(form);
    page.appendChild(goto.root);

    const saved = this.block("saved", "block_saved");
    const table = this.doc.createElement("table");
    this.savedTableBody = this.doc.createElement("tbody");
    table.appendChild(this.savedTableBody);
    saved.body.appendChild(table);
    page.appendChild(saved.root);
    return page;
  }

  private readTriInputs() {
    const values = {
      dAB: Number(this.triInputs.dAB.value),
      dAC: Number(this.triInputs.dAC.value),
      dAD: Number(this.triInputs.dAD.value),
      dBC: Number(this.triInputs.dBC.value),
      dBD: Number(this.triInputs.dBD.value),
      dCD: Number(this.triInputs.dCD.value),
      planeHeight: Number(this.triInputs.planeHeight.value),
    };
    const raw = Object.values(this.triInputs).map((input) => input.value.trim());
    if (raw.some((value) => value === "")
        || !Object.values(values).every(Number.isFinite)) {
      return null;
    }
    return values;
  }
}
