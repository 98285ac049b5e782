import init, { walk, diluted_tour, uncross } from "./pkg/ldl_demo.js";

const num = (id) => Number(document.getElementById(id).value);
const COLORS = ["#d62728", "#1f77b4", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#e377c2", "#17becf"];

// Map lattice points into a canvas with a margin of one cell.
function frame(canvas, pts) {
  const xs = pts.map((p) => p[0]), ys = pts.map((p) => p[1]);
  const x0 = Math.min(...xs) - 1, y0 = Math.min(...ys) - 1;
  const span = Math.max(Math.max(...xs) - x0, Math.max(...ys) - y0) + 1;
  const k = canvas.width / span;
  const ctx = canvas.getContext("2d");
  ctx.clearRect(0, 0, canvas.width, canvas.height);
  return { ctx, k, at: (p) => [(p[0] - x0) * k, canvas.height - (p[1] - y0) * k] };
}

function polyline(f, pts, color, width) {
  if (pts.length === 0) return;
  f.ctx.strokeStyle = color;
  f.ctx.lineWidth = width;
  f.ctx.beginPath();
  pts.forEach((p, i) => {
    const [x, y] = f.at(p);
    i === 0 ? f.ctx.moveTo(x, y) : f.ctx.lineTo(x, y);
  });
  f.ctx.stroke();
}

function dots(f, pts, color, r) {
  f.ctx.fillStyle = color;
  for (const p of pts) {
    const [x, y] = f.at(p);
    f.ctx.fillRect(x - r, y - r, 2 * r, 2 * r);
  }
}

function show(id, v) {
  document.getElementById(id).textContent = JSON.stringify(v, null, 1);
  return !v.error;
}

function runWalk() {
  const v = JSON.parse(walk(num("w-steps"), num("w-seed")));
  const { positions, boundary, ...stats } = v;
  if (!show("w-out", { ...stats, boundary: boundary && boundary.length })) return;
  const f = frame(document.getElementById("w-canvas"), positions);
  polyline(f, positions, "#999", 0.5);
  dots(f, boundary, "#d62728", Math.max(0.75, f.k / 3));
}

function runTour() {
  const v = JSON.parse(diluted_tour(num("t-side"), num("t-p"), num("t-seed"), num("t-box")));
  const { points, tour, ...stats } = v;
  if (!show("t-out", { ...stats, points: points && points.length })) return;
  if (points.length === 0) return;
  const f = frame(document.getElementById("t-canvas"), points);
  polyline(f, tour, "#1f77b4", 1.5);
  dots(f, points, "#000", Math.max(1, f.k / 6));
}

function runUncross() {
  const v = JSON.parse(uncross(num("u-side"), num("u-paths"), num("u-seed")));
  const { before, after, joined, ...stats } = v;
  if (!show("u-out", stats)) return;
  const side = num("u-side");
  const box = [[0, 0], [0, side - 1], [side - 1, side - 1], [side - 1, 0], [0, 0]];
  for (const [id, paths] of [["u-before", before], ["u-after", after]]) {
    const f = frame(document.getElementById(id), box);
    polyline(f, box, "#bbb", 1);
    paths.forEach((p, i) => polyline(f, p, COLORS[i % COLORS.length], 2));
    if (id === "u-after") polyline(f, joined, "rgba(0,0,0,0.25)", 5);
  }
}

await init();
document.getElementById("w-run").onclick = runWalk;
document.getElementById("t-run").onclick = runTour;
document.getElementById("u-run").onclick = runUncross;
runWalk();
runTour();
runUncross();
