import init, { apag_levels, st_geodesics, random_graph_demo, g2_fixture } from "./pkg/geodesics_web.js";

const $ = (id) => document.getElementById(id);
const SVG = "http://www.w3.org/2000/svg";
let state = null;

function el(name, attrs, parent) {
  const node = document.createElementNS(SVG, name);
  for (const [k, v] of Object.entries(attrs)) node.setAttribute(k, v);
  parent.appendChild(node);
  return node;
}

function layout(n) {
  const pts = [];
  for (let i = 0; i < n; i++) {
    const a = (2 * Math.PI * i) / n - Math.PI / 2;
    pts.push([500 + 400 * Math.cos(a), 450 + 400 * Math.sin(a)]);
  }
  return pts;
}

function draw(graph, highlight) {
  const svg = $("view");
  svg.innerHTML = "";
  svg.setAttribute("viewBox", "0 0 1000 900");
  const defs = el("defs", {}, svg);
  const marker = el("marker", { id: "tip", viewBox: "0 0 10 10", refX: 22, refY: 5, markerWidth: 6, markerHeight: 6, orient: "auto" }, defs);
  el("path", { d: "M0,0 L10,5 L0,10 z", fill: "#888" }, marker);
  const pts = layout(graph.n);
  const hot = new Set();
  const ends = new Set();
  for (const p of highlight) {
    ends.add(p[0]);
    ends.add(p[p.length - 1]);
    for (let i = 0; i + 1 < p.length; i++) hot.add(`${p[i]}-${p[i + 1]}`);
  }
  for (const [u, v, w] of graph.arcs) {
    const [x1, y1] = pts[u - 1];
    const [x2, y2] = pts[v - 1];
    const on = hot.has(`${u}-${v}`) || (!graph.directed && hot.has(`${v}-${u}`));
    const line = el("line", { x1, y1, x2, y2, class: on ? "arc hot" : "arc" }, svg);
    if (graph.directed) line.setAttribute("marker-end", "url(#tip)");
    if (graph.weighted) {
      el("text", { x: (x1 + x2) / 2, y: (y1 + y2) / 2, class: "weight" }, svg).textContent = w;
    }
  }
  pts.forEach(([x, y], i) => {
    const g = el("g", { class: ends.has(i + 1) ? "vertex end" : "vertex" }, svg);
    el("circle", { cx: x, cy: y, r: 14 }, g);
    el("text", { x, y: y + 4, "text-anchor": "middle", "font-size": 12 }, g).textContent = i + 1;
  });
}

function listPaths(paths) {
  const ol = $("paths");
  ol.innerHTML = "";
  paths.forEach((p) => {
    const li = document.createElement("li");
    li.textContent = p.join(" ");
    li.onmouseenter = () => { li.classList.add("active"); draw(state.graph, [p]); };
    li.onmouseleave = () => { li.classList.remove("active"); draw(state.graph, paths); };
    ol.appendChild(li);
  });
  draw(state.graph, paths);
}

function showLevel() {
  const k = Number($("k").value);
  const level = state.levels[k - 1];
  $("k-label").textContent = `k=${k}, |Geo[k]|=${level.size}`;
  listPaths(level.paths);
}

function guard(fn) {
  return () => {
    $("error").textContent = "";
    try { fn(); } catch (e) { $("error").textContent = e.message ?? String(e); }
  };
}

function run() {
  state = JSON.parse(apag_levels($("text").value));
  $("k").max = state.levels.length;
  $("k").value = 1;
  $("summary").textContent =
    `N=${state.geodesics} geodesics, mu=${state.mu}, ${state.levels_built} levels built` +
    (state.truncated ? " (list truncated)" : "");
  showLevel();
}

function st() {
  if (!state) run();
  const r = JSON.parse(st_geodesics($("text").value, Number($("s").value), Number($("t").value)));
  $("k-label").textContent = `dist(${r.s},${r.t}) = ${r.distance ?? "inf"}, ${r.count} geodesics`;
  listPaths(r.paths);
}

await init();
$("text").value = g2_fixture();
$("load-g2").onclick = guard(() => { $("text").value = g2_fixture(); run(); });
$("random").onclick = guard(() => {
  $("text").value = random_graph_demo(
    Number($("rn").value), Number($("rm").value), BigInt($("rseed").value),
    $("rdir").checked, Number($("rw").value));
  run();
});
$("run").onclick = guard(run);
$("k").oninput = guard(showLevel);
$("st").onclick = guard(st);
guard(run)();
