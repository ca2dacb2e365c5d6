import init, { bratuProfile, foldDiagram, seriesOp } from "./pkg/dtm_web.js";

const $ = (id) => document.getElementById(id);
const fmt = (v) => (Math.abs(v) < 1e-3 && v !== 0 ? v.toExponential(3) : v.toPrecision(8));

function call(f, info) {
  try {
    return JSON.parse(f());
  } catch (e) {
    info.innerHTML = `<span class="err">${e.message ?? e}</span>`;
    return null;
  }
}

// Plots named series of [x, y] points on shared, padded axes.
function plot(canvas, series, marks = []) {
  const ctx = canvas.getContext("2d");
  const { width: w, height: h } = canvas;
  const pad = 40;
  ctx.clearRect(0, 0, w, h);
  const pts = series.flatMap((s) => s.points).concat(marks.map((m) => m.at));
  let [x0, x1] = [Math.min(...pts.map((p) => p[0])), Math.max(...pts.map((p) => p[0]))];
  let [y0, y1] = [Math.min(0, ...pts.map((p) => p[1])), Math.max(...pts.map((p) => p[1]))];
  if (y1 === y0) y1 = y0 + 1;
  const X = (x) => pad + ((x - x0) / (x1 - x0)) * (w - 2 * pad);
  const Y = (y) => h - pad - ((y - y0) / (y1 - y0)) * (h - 2 * pad);

  ctx.strokeStyle = "#999";
  ctx.strokeRect(pad, pad, w - 2 * pad, h - 2 * pad);
  ctx.fillStyle = "#555";
  ctx.font = "12px sans-serif";
  ctx.fillText(fmt(x0), pad, h - pad + 15);
  ctx.fillText(fmt(x1), w - pad - 40, h - pad + 15);
  ctx.fillText(fmt(y1), 2, pad + 4);
  ctx.fillText(fmt(y0), 2, h - pad);

  series.forEach((s, i) => {
    ctx.strokeStyle = s.color;
    ctx.setLineDash(s.dash ?? []);
    ctx.lineWidth = 2;
    ctx.beginPath();
    s.points.forEach(([x, y], j) => (j ? ctx.lineTo(X(x), Y(y)) : ctx.moveTo(X(x), Y(y))));
    ctx.stroke();
    ctx.fillStyle = s.color;
    ctx.fillText(s.label, w - pad - 160, pad + 16 + 16 * i);
  });
  ctx.setLineDash([]);
  for (const m of marks) {
    ctx.fillStyle = m.color;
    ctx.beginPath();
    ctx.arc(X(m.at[0]), Y(m.at[1]), 4, 0, 2 * Math.PI);
    ctx.fill();
    ctx.fillText(m.label, X(m.at[0]) + 6, Y(m.at[1]) - 6);
  }
}

function runProfile() {
  const info = $("p-info");
  const p = call(() => bratuProfile(+$("p-lambda").value, +$("p-order").value, $("p-branch").value, 201), info);
  if (!p) return;
  info.textContent =
    `u'(0) = ${fmt(p.gamma)}, theta = ${fmt(p.theta)}, ` +
    `residual u(1) = ${fmt(p.residual)}, max |error| = ${fmt(p.max_abs_err)}`;
  plot($("p-plot"), [
    { label: "series", color: "#1f5fbf", points: p.rows.map((r) => [r.x, r.u_dtm]) },
    { label: "closed form", color: "#d2691e", dash: [6, 4], points: p.rows.map((r) => [r.x, r.u_analytic]) },
  ]);
}

function runFold() {
  const info = $("f-info");
  const lambda = +$("f-lambda").value;
  const f = call(() => foldDiagram(lambda, 20, 400), info);
  if (!f) return;
  const roots = f.roots.map((r) => `theta = ${fmt(r.theta)} (u'(0) = ${fmt(r.gamma)}, u(1/2) = ${fmt(r.peak)})`);
  info.textContent =
    `critical lambda = ${fmt(f.critical.lambda)} at theta = ${fmt(f.critical.theta)}; ` +
    (roots.length ? `roots: ${roots.join("; ")}` : "no solution at this lambda");
  const last = f.curve[f.curve.length - 1][0];
  plot(
    $("f-plot"),
    [
      { label: "lambda(theta)", color: "#1f5fbf", points: f.curve },
      { label: `lambda = ${lambda}`, color: "#888", dash: [4, 4], points: [[0, lambda], [last, lambda]] },
    ],
    [
      { at: [f.critical.theta, f.critical.lambda], color: "#b00", label: "fold" },
      ...f.roots.map((r) => ({ at: [r.theta, lambda], color: "#2a8a2a", label: "" })),
    ],
  );
}

function runSeries() {
  const info = $("s-info");
  const r = call(() => seriesOp($("s-op").value, $("s-coeffs").value, +$("s-m").value), info);
  if (!r) return;
  info.textContent =
    `multiplies: recurrence ${r.count_recurrence}, naive ${r.count_naive}; ` +
    `max |difference| = ${fmt(r.max_abs_diff)}`;
  const rows = r.recurrence.map(
    (v, k) => `<tr><td>${k}</td><td>${fmt(r.input[k])}</td><td>${fmt(v)}</td><td>${fmt(r.naive[k])}</td></tr>`,
  );
  $("s-table").innerHTML =
    "<table><tr><th>k</th><th>input</th><th>recurrence</th><th>naive</th></tr>" + rows.join("") + "</table>";
}

await init();
$("p-run").onclick = runProfile;
$("f-run").onclick = runFold;
$("s-run").onclick = runSeries;
runProfile();
runFold();
runSeries();
