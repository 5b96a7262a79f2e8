import { execFileSync } from "node:child_process";
import { createHash } from "node:crypto";
import { existsSync, mkdtempSync, readFileSync, writeFileSync } from "node:fs";
import { tmpdir } from "node:os";
import { join } from "node:path";
import { describe, expect, it } from "vitest";

import { renderHeatmapSvg } from "../src/heatmap.js";
import { parseScanJson } from "../src/scan.js";
import { renderTimeseriesSvg } from "../src/timeseries.js";
import { parseTrajectoryCsv } from "../src/trajectory.js";
import { render } from "../src/render.js";

const FIXTURES = join(__dirname, "fixtures");
const read = (name: string) => readFileSync(join(FIXTURES, name), "utf-8");

describe("timeseries rendering", () => {
  it("draws five series and a legend", () => {
    const svg = renderTimeseriesSvg(parseTrajectoryCsv(read("timeseries_small.csv")));
    expect(svg).toContain("<svg");
    expect(svg.match(/class="series"/g)).toHaveLength(5);
    expect(svg).toContain("Ptot");
    expect(svg).toContain("↑");  // four-state labels in the legend
  });

  it("constant total stays flat", () => {
    const header = "t,P1,P2,P3,P4,Ptot,re_a1,im_a1,re_a2,im_a2,re_a3,im_a3,re_a4,im_a4";
    const rows = [0, 1, 2].map((t) =>
      `${t},1,0,0,0,1,1,0,0,0,0,0,0,0`);
    const svg = renderTimeseriesSvg(parseTrajectoryCsv([header, ...rows].join("\n")));
    const ptot = svg.match(/<polyline points="([^"]+)"[^/]*stroke="#1f77b4"/);
    expect(ptot).not.toBeNull();
    const ys = ptot![1].split(" ").map((p) => Number(p.split(",")[1]));
    expect(new Set(ys).size).toBe(1);
  });
});

describe("heatmap rendering", () => {
  it("mixed verdicts get at least one white boundary polyline", () => {
    const svg = renderHeatmapSvg(parseScanJson(read("heatmap_mixed.json")));
    const overlays = svg.match(/class="boundary"/g) ?? [];
    expect(overlays.length).toBeGreaterThanOrEqual(1);
    expect(svg).toContain('stroke="white"');
  });

  it("empty boundary set renders without overlay and without error", () => {
    const svg = renderHeatmapSvg(parseScanJson(read("heatmap_all_stable.json")));
    expect(svg).toContain("<svg");
    expect(svg.match(/class="boundary"/g)).toBeNull();
  });

  it("overlay can be disabled", () => {
    const svg = renderHeatmapSvg(parseScanJson(read("heatmap_mixed.json")),
                                 { boundaryOverlay: false });
    expect(svg.match(/class="boundary"/g)).toBeNull();
  });
});

describe("render() and the CLI", () => {
  it("writes an SVG file and leaves the input unchanged", () => {
    const dir = mkdtempSync(join(tmpdir(), "dwplots-"));
    const input = join(FIXTURES, "heatmap_mixed.json");
    const before = createHash("sha256").update(readFileSync(input)).digest("hex");
    const out = render({ input, kind: "heatmap", output: join(dir, "o.svg") });
    expect(existsSync(out)).toBe(true);
    expect(readFileSync(out, "utf-8")).toContain("<svg");
    const after = createHash("sha256").update(readFileSync(input)).digest("hex");
    expect(after).toBe(before);
  });

  it("cli renders both kinds with inferred kind", () => {
    const dir = mkdtempSync(join(tmpdir(), "dwplots-"));
    const cli = join(__dirname, "..", "dist", "cli.js");
    for (const fixture of ["timeseries_small.csv", "heatmap_mixed.json"]) {
      const out = join(dir, fixture + ".svg");
      execFileSync("node", [cli, "render",
                            "--input", join(FIXTURES, fixture),
                            "--output", out]);
      expect(existsSync(out)).toBe(true);
    }
  });

  it("cli exits 2 on usage errors and 1 on schema errors", () => {
    const cli = join(__dirname, "..", "dist", "cli.js");
    const dir = mkdtempSync(join(tmpdir(), "dwplots-"));
    const runStatus = (args: string[]) => {
      try {
        execFileSync("node", [cli, ...args], { stdio: "pipe" });
        return 0;
      } catch (err: any) {
        return err.status as number;
      }
    };
    expect(runStatus(["render", "--input", "x.json"])).toBe(2);
    expect(runStatus(["nonsense"])).toBe(2);
    const badCsv = join(dir, "bad.csv");
    writeFileSync(badCsv, "t,P1\n0,1\n");
    expect(runStatus(["render", "--input", badCsv,
                      "--output", join(dir, "o.svg")])).toBe(1);
  });
});
