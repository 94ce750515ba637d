/**
 * Route coverage: clicking through every control on all three pages
 * against a live service must fire every route in the API table
 * (fault hooks included once the debug flag is on).
 */

import { afterAll, beforeAll, describe, expect, it } from "vitest";

import { API_ROUTES, routeKeyFor } from "../src/api.js";
import { ControlPanelApp } from "../src/app.js";
import { ServiceHandle, startService } from "./service.js";

let service: ServiceHandle;
const calls = new Set<string>();
const callLog: string[] = [];

const recordingFetch = (input: string, init?: RequestInit) => {
  const method = init?.method ?? "GET";
  const key = routeKeyFor(method, new URL(input).pathname);
  calls.add(key);
  callLog.push(key);
  return fetch(input, init);
};

function mount(debug: boolean): ControlPanelApp {
  document.body.innerHTML = '<div id="root"></div>';
  return new ControlPanelApp(document.getElementById("root")!, {
    baseUrl: service.baseUrl,
    fetchFn: recordingFetch,
    pollIntervalMs: 0,
    toastTimeoutMs: 100,
    debug,
  });
}

function control(name: string): HTMLElement {
  const element = document.querySelector<HTMLElement>(
    `[data-control="${name}"]`,
  );
  expect(element, `control ${name} must exist`).not.toBeNull();
  return element!;
}

async function click(app: ControlPanelApp, name: string): Promise<void> {
  control(name).click();
  await app.idle();
}

function setValue(name: string, value: string): void {
  (control(name) as HTMLInputElement).value = value;
}

beforeAll(async () => {
  service = await startService();
}, 30_000);

afterAll(async () => {
  await service.stop();
});

describe("control panel route coverage", () => {
  it("clicks every control on all three pages and covers the route table", async () => {
    const app = mount(true);
    await app.start(); // GET config + status + positions

    // no duplicate control ids anywhere
    const ids = Array.from(
      document.querySelectorAll<HTMLElement>("[data-control]"),
    ).map((el) => el.getAttribute("data-control"));
    expect(new Set(ids).size).toBe(ids.length);

    // --- calibration page: jog, stop, zero (and the debug fault hooks)
    app.showPage("calibration");
    for (const coil of ["A", "B", "C", "D"]) {
      await click(app, `jog-wind-${coil}`);
      await click(app, `jog-stop-${coil}`);
      await click(app, `jog-unwind-${coil}`);
      await click(app, `jog-stop-${coil}`);
      await click(app, `zero-${coil}`);
    }
    await click(app, "fault-A");
    expect(
      document.querySelector('[data-testid="cal-chip-A"]')!.className,
    ).toContain("chip-red");
    await click(app, "fault-clear-A");
    expect(
      document.querySelector('[data-testid="cal-chip-A"]')!.className,
    ).toContain("chip-green");

    // --- control page: half-turns, axis moves, goto, saved positions
    app.showPage("control");
    await click(app, "half-turn-unwind-A");
    // one lone half-turn makes the four lengths inconsistent: the
    // position must show grayed with its residual, not vanish
    const position = document.querySelector<HTMLElement>(
      '[data-testid="position"]',
    )!;
    expect(position.className).toContain("dim");
    await click(app, "half-turn-wind-A");
    expect(position.className).not.toContain("dim");
    for (const axis of ["x", "y", "z"]) {
      await click(app, `axis-${axis}-plus`);
      await click(app, `axis-${axis}-minus`);
    }

    setValue("goto-x", "70");
    setValue("goto-y", "55");
    setValue("goto-z", "80");
    await click(app, "goto-go");

    (control("goto-relative") as HTMLInputElement).checked = true;
    setValue("goto-x", "0");
    setValue("goto-y", "0");
    setValue("goto-z", "-5");
    await click(app, "goto-go");

    setValue("status-save-label", "route coverage");
    await click(app, "status-save");
    const savedGoto = document.querySelector<HTMLElement>(
      '[data-control^="saved-goto-"]',
    );
    expect(savedGoto).not.toBeNull();
    const savedId = savedGoto!
      .getAttribute("data-control")!
      .replace("saved-goto-", "");
    await click(app, `saved-goto-${savedId}`);
    await click(app, `saved-delete-${savedId}`);

    // --- setup page: trilateration and the config write
    app.showPage("setup");
    const diag = (120 * Math.SQRT2).toFixed(6);
    setValue("tri-dAB", "120");
    setValue("tri-dAC", diag);
    setValue("tri-dAD", "120");
    setValue("tri-dBC", "120");
    setValue("tri-dBD", diag);
    setValue("tri-dCD", "120");
    setValue("tri-planeHeight", "150");
    await click(app, "tri-solve");
    expect(
      document.querySelector('[data-testid="tri-result"]')!.textContent,
    ).toContain("A:");
    await click(app, "tri-commit");
    await click(app, "lang-save-default");

    // --- coverage: every documented route was exercised
    for (const route of API_ROUTES) {
      const key = `${route.method} ${route.path}`;
      expect(calls.has(key), `route ${key} must be hit by a control`).toBe(true);
    }
  }, 60_000);

  it("hides fault hooks unless the debug flag is set", async () => {
    const app = mount(false);
    await app.start();
    app.showPage("calibration");
    expect(document.querySelector('[data-control="fault-A"]')).toBeNull();
    expect(document.querySelector('[data-control="zero-A"]')).not.toBeNull();
  });

  it("reconstructs identical controls from status and config alone", async () => {
    const first = mount(false);
    await first.start();
    const before = Array.from(
      document.querySelectorAll<HTMLElement>("[data-control]"),
    ).map((el) => el.getAttribute("data-control")).sort();

    const second = mount(false);
    await second.start();
    const after = Array.from(
      document.querySelectorAll<HTMLElement>("[data-control]"),
    ).map((el) => el.getAttribute("data-control")).sort();

    expect(after).toEqual(before);
  });

  it("never mutates state on the poll path", async () => {
    const app = mount(false);
    await app.start();
    const before = callLog.length;
    await app.refresh();
    await app.refresh();
    const polled = callLog.slice(before);
    expect(polled.length).toBeGreaterThan(0);
    expect(polled.every((key) => key.startsWith("GET "))).toBe(true);
  });

  it("keeps form values through a fold/unfold cycle", async () => {
    const app = mount(false);
    await app.start();
    app.showPage("setup");
    const input = control("tri-dAB") as HTMLInputElement;
    input.value = "120";
    control("fold-trilateration").click();
    expect(app.isFolded("trilateration")).toBe(true);
    control("fold-trilateration").click();
    expect(app.isFolded("trilateration")).toBe(false);
    expect(input.value).toBe("120");
  });

  it("validates the goto form client-side", async () => {
    const app = mount(false);
    await app.start();
    app.showPage("control");
    const before = callLog.length;
    setValue("goto-x", "not a number");
    setValue("goto-y", "1");
    setValue("goto-z", "2");
    await click(app, "goto-go");
    expect(document.querySelector('[data-testid="toast"]')).not.toBeNull();
    const sent = callLog.slice(before);
    expect(sent.some((key) => key.startsWith("POST"))).toBe(false);
  });
});
