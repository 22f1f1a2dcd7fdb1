import { LanescanApi } from "./api.js";
import { App } from "./app.js";

window.addEventListener("DOMContentLoaded", () => {
  const root = document.getElementById("app");
  if (root) {
    new App(root, new LanescanApi());
  }
});
