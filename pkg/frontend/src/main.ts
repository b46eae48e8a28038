/** Browser wiring: artifact loading, events, panels. */

import { drawChart, isEmptyPayload } from "./charts.js";
import { pickEdge, pickNode } from "./hit.js";
import { drawNetwork, edgeScreenSegments, nodeScreenPositions } from "./render.js";
import { panBy, zoomAt } from "./scales.js";
import { validateArtifacts } from "./schema.js";
import { ViewState } from "./state.js";

const el = <T extends HTMLElement>(id: string): T => {
  const found = document.getElementById(id);
  if (!found) throw new Error(`missing element #${id}`);
  return found as T;
};

const banner = el<HTMLDivElement>("banner");
const networkCanvas = el<HTMLCanvasElement>("network");
const chartPanel = el<HTMLDivElement>("chart-panel");
const chartCanvas = el<HTMLCanvasElement>("chart");
const chartTitle = el<HTMLDivElement>("chart-title");
const chartNotice = el<HTMLDivElement>("chart-notice");
const searchBox = el<HTMLInputElement>("search");
const resultList = el<HTMLUListElement>("results");
const metaBox = el<HTMLDivElement>("meta");

let state: ViewState | null = null;

function showBanner(message: string): void {
  banner.textContent = message;
  banner.style.display = "block";
}

function hideBanner(): void {
  banner.style.display = "none";
}

function sizeCanvas(canvas: HTMLCanvasElement): { w: number; h: number } {
  const rect = canvas.getBoundingClientRect();
  const ratio = window.devicePixelRatio || 1;
  canvas.width = Math.max(1, Math.round(rect.width * ratio));
  canvas.height = Math.max(1, Math.round(rect.height * ratio));
  const ctx = canvas.getContext("2d")!;
  ctx.setTransform(ratio, 0, 0, ratio, 0, 0);
  return { w: rect.width, h: rect.height };
}

function redrawNetwork(): void {
  if (!state) return;
  const { w, h } = sizeCanvas(networkCanvas);
  drawNetwork(networkCanvas.getContext("2d")!, state, w, h);
}

function redrawChart(): void {
  if (!state || state.activeEdge === null) return;
  const entry = state.charts[state.graph.edges[state.activeEdge].chart];
  const { w, h } = sizeCanvas(chartCanvas);
  drawChart(chartCanvas.getContext("2d")!, entry, state.chartCamera, w, h);
}

function renderResults(query: string): void {
  if (!state) return;
  resultList.replaceChildren();
  for (const node of state.filterFeatures(query)) {
    const item = document.createElement("li");
    item.textContent = node.name;
    item.dataset.id = String(node.id);
    if (state.selected.has(node.id)) item.classList.add("selected");
    item.addEventListener("click", () => {
      state!.selectFeature(node.id);
      renderResults(searchBox.value);
      redrawNetwork();
    });
    resultList.appendChild(item);
  }
}

function openEdge(index: number): void {
  if (!state) return;
  const entry = state.selectEdge(index);
  chartTitle.textContent = `${entry.x_feature} × ${entry.y_feature} — ${entry.type}`;
  if (isEmptyPayload(entry)) {
    chartNotice.textContent = "no overlapping records";
    chartNotice.style.display = "block";
    chartCanvas.style.display = "none";
  } else {
    chartNotice.style.display = "none";
    chartCanvas.style.display = "block";
  }
  chartPanel.style.display = "flex";
  redrawChart();
  redrawNetwork();
}

function closeChart(): void {
  if (state) state.clearEdge();
  chartPanel.style.display = "none";
  redrawNetwork();
}

function boot(graphRaw: unknown, chartsRaw: unknown): void {
  const result = validateArtifacts(graphRaw, chartsRaw);
  if (!result.ok) {
    state = null;
    showBanner(`artifact rejected — ${result.error}`);
    return;
  }
  hideBanner();
  state = new ViewState(result.graph, result.charts);
  const meta = result.graph.meta;
  metaBox.textContent =
    `${meta.n_features} features · ${meta.n_records} records · ` +
    `${result.graph.edges.length} edges · ${meta.n_components} components · ` +
    `alpha ${meta.alpha}`;
  closeChart();
  renderResults("");
  redrawNetwork();
}

async function loadFromUrl(graphUrl: string, chartsUrl: string): Promise<void> {
  try {
    const [graphResp, chartsResp] = await Promise.all([fetch(graphUrl), fetch(chartsUrl)]);
    if (!graphResp.ok) throw new Error(`${graphUrl}: HTTP ${graphResp.status}`);
    if (!chartsResp.ok) throw new Error(`${chartsUrl}: HTTP ${chartsResp.status}`);
    boot(await graphResp.json(), await chartsResp.json());
  } catch (err) {
    showBanner(`failed to load artifacts — ${String(err)}`);
  }
}

function wireFilePickers(): void {
  const graphInput = el<HTMLInputElement>("graph-file");
  const chartsInput = el<HTMLInputElement>("charts-file");
  el<HTMLButtonElement>("load-files").addEventListener("click", async () => {
    const graphFile = graphInput.files?.[0];
    const chartsFile = chartsInput.files?.[0];
    if (!graphFile || !chartsFile) {
      showBanner("choose both a graph file and a charts file");
      return;
    }
    try {
      boot(JSON.parse(await graphFile.text()), JSON.parse(await chartsFile.text()));
    } catch (err) {
      showBanner(`failed to parse artifacts — ${String(err)}`);
    }
  });
}

function wireNetworkEvents(): void {
  let dragging = false;
  let moved = false;
  let lastX = 0;
  let lastY = 0;

  networkCanvas.addEventListener("mousedown", (ev) => {
    dragging = true;
    moved = false;
    lastX = ev.offsetX;
    lastY = ev.offsetY;
  });
  window.addEventListener("mouseup", () => {
    dragging = false;
  });
  networkCanvas.addEventListener("mousemove", (ev) => {
    if (!dragging || !state) return;
    const dx = ev.offsetX - lastX;
    const dy = ev.offsetY - lastY;
    if (Math.abs(dx) + Math.abs(dy) > 2) moved = true;
    const rect = networkCanvas.getBoundingClientRect();
    state.camera = panBy(state.camera, rect.width, rect.height, dx, dy);
    lastX = ev.offsetX;
    lastY = ev.offsetY;
    redrawNetwork();
  });
  networkCanvas.addEventListener("wheel", (ev) => {
    if (!state) return;
    ev.preventDefault();
    const rect = networkCanvas.getBoundingClientRect();
    const factor = ev.deltaY < 0 ? 1.15 : 1 / 1.15;
    state.camera = zoomAt(state.camera, factor, rect.width, rect.height, ev.offsetX, ev.offsetY);
    redrawNetwork();
  });
  networkCanvas.addEventListener("click", (ev) => {
    if (!state || moved) return;
    const rect = networkCanvas.getBoundingClientRect();
    const points = nodeScreenPositions(state, rect.width, rect.height);
    const nodeIndex = pickNode(points, ev.offsetX, ev.offsetY, 10);
    if (nodeIndex !== null) {
      state.selectFeature(state.graph.nodes[nodeIndex].id, ev.ctrlKey || ev.metaKey);
      renderResults(searchBox.value);
      redrawNetwork();
      return;
    }
    const segments = edgeScreenSegments(state, points);
    const edgeIndex = pickEdge(segments, ev.offsetX, ev.offsetY, 6);
    if (edgeIndex !== null) {
      openEdge(edgeIndex);
      return;
    }
    state.selectFeature(null);
    renderResults(searchBox.value);
    redrawNetwork();
  });
}

function wireChartEvents(): void {
  let dragging = false;
  let lastX = 0;
  let lastY = 0;
  chartCanvas.addEventListener("mousedown", (ev) => {
    dragging = true;
    lastX = ev.offsetX;
    lastY = ev.offsetY;
  });
  window.addEventListener("mouseup", () => {
    dragging = false;
  });
  chartCanvas.addEventListener("mousemove", (ev) => {
    if (!dragging || !state) return;
    const rect = chartCanvas.getBoundingClientRect();
    state.chartCamera = panBy(state.chartCamera, rect.width, rect.height, ev.offsetX - lastX, ev.offsetY - lastY);
    lastX = ev.offsetX;
    lastY = ev.offsetY;
    redrawChart();
  });
  chartCanvas.addEventListener("wheel", (ev) => {
    if (!state) return;
    ev.preventDefault();
    const rect = chartCanvas.getBoundingClientRect();
    const factor = ev.deltaY < 0 ? 1.15 : 1 / 1.15;
    state.chartCamera = zoomAt(state.chartCamera, factor, rect.width, rect.height, ev.offsetX, ev.offsetY);
    redrawChart();
  });
  el<HTMLButtonElement>("chart-close").addEventListener("click", closeChart);
}

function start(): void {
  wireFilePickers();
  wireNetworkEvents();
  wireChartEvents();
  searchBox.addEventListener("input", () => renderResults(searchBox.value));
  window.addEventListener("resize", () => {
    redrawNetwork();
    redrawChart();
  });

  const params = new URLSearchParams(window.location.search);
  const graphUrl = params.get("graph");
  const chartsUrl = params.get("charts");
  if (graphUrl && chartsUrl) {
    void loadFromUrl(graphUrl, chartsUrl);
  } else {
    showBanner("load a graph artifact and a charts artifact to begin");
  }
}

start();
