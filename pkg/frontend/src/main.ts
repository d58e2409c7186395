// Browser entry point. Everything testable lives in app.ts and below.

import { bootstrap } from "./app.js";

const root = document.getElementById("root");
if (root) {
  void bootstrap(root).catch((error) => {
    console.error("startup failed", error);
  });
}
