import { ControlPanelApp } from "./app.js";

const params = new URLSearchParams(window.location.search);
const root = document.getElementById("app");
if (!root) {
  throw new Error("missing #app element");
}
const app = new ControlPanelApp(root, {
  pollIntervalMs: 500,
  debug: params.get("debug") === "1",
});
void app.start();
