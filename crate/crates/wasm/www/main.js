import init, { compress, resources, sweep } from "./pkg/hqsp_wasm.js";

const $ = (id) => document.getElementById(id);

function params() {
  return {
    kind: $("kind").value,
    n: Number($("n").value),
    transform: $("transform").value,
    levels: Number($("levels").value),
    tau: Number($("tau").value),
    seed: Number($("seed").value),
  };
}

function draw(series, colors) {
  const c = $("plot");
  const ctx = c.getContext("2d");
  ctx.clearRect(0, 0, c.width, c.height);
  let lo = Infinity, hi = -Infinity;
  for (const s of series) for (const v of s) { lo = Math.min(lo, v); hi = Math.max(hi, v); }
  if (hi === lo) hi = lo + 1;
  series.forEach((s, k) => {
    ctx.strokeStyle = colors[k];
    ctx.beginPath();
    s.forEach((v, i) => {
      const x = (i / (s.length - 1)) * c.width;
      const y = c.height - ((v - lo) / (hi - lo)) * (c.height - 10) - 5;
      i === 0 ? ctx.moveTo(x, y) : ctx.lineTo(x, y);
    });
    ctx.stroke();
  });
}

function table(head, rows) {
  const th = head.map((h) => `<th>${h}</th>`).join("");
  const tr = rows.map((r) => `<tr>${r.map((v) => `<td>${v}</td>`).join("")}</tr>`).join("");
  $("table").innerHTML = `<table><tr>${th}</tr>${tr}</table>`;
}

function guarded(f) {
  return () => {
    $("error").textContent = "";
    try { f(); } catch (e) { $("error").textContent = e.message ?? String(e); }
  };
}

function run() {
  const p = params();
  const r = compress(p.kind, p.n, p.transform, p.levels, p.tau, p.seed);
  draw([r.original, r.reconstruction], ["#1f77b4", "#ff7f0e"]);
  $("summary").textContent =
    `d = ${r.d}, CR = ${r.cr.toFixed(1)}, TD = ${r.td.toFixed(4)}, ` +
    `CX sqsp ${r.sqsp_cx} + decompression ${r.decompression_cx} = ${r.total_cx} (EAE ${r.eae_cx}), depth ${r.total_depth}`;
  table(["stage", "CX"], [["sqsp", r.sqsp_cx], ["decompression", r.decompression_cx], ["total", r.total_cx], ["EAE", r.eae_cx]]);
  r.free();
}

function runSweep() {
  const p = params();
  const taus = [0, 0.001, 0.002, 0.005, 0.01, 0.02, 0.05, 0.1];
  const flat = sweep(p.kind, p.n, p.transform, p.levels, new Float64Array(taus), p.seed);
  const rows = [];
  for (let i = 0; i < flat.length; i += 4) {
    rows.push([flat[i], flat[i + 1], flat[i + 2].toFixed(1), flat[i + 3].toFixed(4)]);
  }
  table(["tau", "d", "CR", "TD"], rows);
  draw([rows.map((r) => Number(r[3]))], ["#2ca02c"]);
}

function cost() {
  const p = params();
  const [cx, single, depth] = resources(p.n, p.transform, p.levels);
  table(["n", "transform", "levels", "CX", "single", "depth"], [[p.n, p.transform, p.transform === "dft" ? "-" : p.levels, cx, single, depth]]);
}

await init();
$("run").onclick = guarded(run);
$("sweep").onclick = guarded(runSweep);
$("cost").onclick = guarded(cost);
