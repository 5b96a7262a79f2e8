export function esc(text: string): string {
  return text
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;");
}

export function fmt(x: number): string {
  if (!Number.isFinite(x)) return "0";
  const s = x.toPrecision(6);
  return s.includes(".") || s.includes("e")
    ? String(Number(s))
    : s;
}

export function tag(name: string, attrs: Record<string, string | number>,
                    body = ""): string {
  const parts = Object.entries(attrs)
    .map(([k, v]) => `${k}="${typeof v === "number" ? fmt(v) : esc(v)}"`)
    .join(" ");
  return body === "" && name !== "text"
    ? `<${name} ${parts}/>`
    : `<${name} ${parts}>${body}</${name}>`;
}

export function text(x: number, y: number, body: string,
                     extra: Record<string, string | number> = {}): string {
  return tag("text", { x, y, "font-family": "sans-serif", ...extra }, esc(body));
}

export function document(width: number, height: number, body: string): string {
  return `<?xml version="1.0" encoding="UTF-8"?>\n` +
    `<svg xmlns="http://www.w3.org/2000/svg" width="${width}" height="${height}" ` +
    `viewBox="0 0 ${width} ${height}">\n` +
    tag("rect", { x: 0, y: 0, width, height, fill: "white" }) + "\n" +
    body + "\n</svg>\n";
}

/** Linear map from data range to pixel range. */
export function scale(d0: number, d1: number, p0: number, p1: number) {
  const k = (p1 - p0) / (d1 - d0 || 1);
  return (v: number) => p0 + (v - d0) * k;
}

export function niceTicks(lo: number, hi: number, n = 5): number[] {
  const span = hi - lo || 1;
  const step0 = span / Math.max(1, n - 1);
  const mag = Math.pow(10, Math.floor(Math.log10(step0)));
  const candidates = [1, 2, 2.5, 5, 10].map((m) => m * mag);
  const step = candidates.find((s) => span / s <= n) ?? candidates[4];
  const start = Math.ceil(lo / step) * step;
  const ticks: number[] = [];
  for (let v = start; v <= hi + 1e-12 * span; v += step) {
    ticks.push(Math.abs(v) < 1e-12 * span ? 0 : v);
  }
  return ticks;
}
