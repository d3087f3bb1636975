/// <reference types="vitest" />
import { defineConfig } from "vite";

// The production bundle lands inside the Python package so the elicitation
// service can serve the questionnaire at "/" from one process.
export default defineConfig({
  build: {
    outDir: "../src/riskmcdm/static",
    emptyOutDir: true,
  },
  server: {
    proxy: {
      "/api": "http://127.0.0.1:8080",
      "/healthz": "http://127.0.0.1:8080",
    },
  },
  test: {
    environment: "jsdom",
  },
});
