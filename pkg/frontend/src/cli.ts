import { inferKind, render } from "./render.js";
import { PlotKind, PlotSpec, SchemaError } from "./types.js";

const USAGE = `usage: drivenwell-plots render --input FILE --output FILE.svg
         [--kind heatmap|timeseries] [--title T] [--x-label L] [--y-label L]
         [--no-boundary]

Renders drivenwell artifacts: trajectory CSV -> timeseries, scan JSON -> heatmap.
The kind is inferred from the input extension when --kind is omitted.`;

function parseArgs(argv: string[]): PlotSpec {
  if (argv[0] !== "render") {
    throw new UsageError(`unknown command ${JSON.stringify(argv[0])}`);
  }
  const opts: Record<string, string | boolean> = {};
  for (let i = 1; i < argv.length; i++) {
    const a = argv[i];
    if (a === "--no-boundary") {
      opts.noBoundary = true;
    } else if (a.startsWith("--")) {
      const value = argv[++i];
      if (value === undefined) throw new UsageError(`missing value for ${a}`);
      opts[a.slice(2)] = value;
    } else {
      throw new UsageError(`unexpected argument ${JSON.stringify(a)}`);
    }
  }
  const input = opts.input;
  const output = opts.output;
  if (typeof input !== "string" || typeof output !== "string") {
    throw new UsageError("--input and --output are required");
  }
  let kind = opts.kind as PlotKind | undefined;
  if (kind === undefined) kind = inferKind(input);
  if (kind !== "heatmap" && kind !== "timeseries") {
    throw new UsageError(`bad --kind ${JSON.stringify(opts.kind)}`);
  }
  return {
    input,
    output,
    kind,
    title: opts.title as string | undefined,
    xLabel: opts["x-label"] as string | undefined,
    yLabel: opts["y-label"] as string | undefined,
    boundaryOverlay: opts.noBoundary ? false : undefined,
  };
}

class UsageError extends Error {}

export function main(argv: string[]): number {
  try {
    render(parseArgs(argv));
    return 0;
  } catch (err) {
    if (err instanceof UsageError) {
      console.error(`error: ${err.message}\n\n${USAGE}`);
      return 2;
    }
    if (err instanceof SchemaError) {
      console.error(`schema error: ${err.message}`);
      return 1;
    }
    console.error(`error: ${err}`);
    return 1;
  }
}

process.exit(main(process.argv.slice(2)));
