import { defineConfig } from "vitest/config";

export default defineConfig({
  test: {
    environment: "happy-dom",
    environmentOptions: {
      happyDOM: {
        // Match the origin the integration suite serves from, mirroring
        // production where the page is served by the same host as the API.
        // Must agree with PORT in tests/integration.test.ts.
        url: "http://127.0.0.1:8931",
      },
    },
    include: ["tests/**/*.test.ts"],
    testTimeout: 120_000,
    hookTimeout: 120_000,
  },
});
