/**
 * Browser entry point. Wires the widget controller to a plain DOM shell:
 * an editor with an example picker, the stepper, and the analysis
 * panels. The engine is reached over a WebSocket bridge to a local
 * `serve` process (`?engine=ws://...`, default ws://localhost:8765).
 */

import { EngineClient } from "./client.js";
import { WebSocketTransport } from "./client.js";
import { EXAMPLES } from "./examples.js";
import { renderAnalyses, renderBisim, renderParseStatus, renderStepper } from "./render.js";
import { WidgetController, type WidgetName } from "./widgets.js";

const WIDGET_TITLES: Partial<Record<WidgetName, string>> = {
  globalView: "Global structure view",
  localView: "Local structure view",
  runSemantics: "Run semantics",
  analyses: "Analyses",
  bisimulation: "Strong bisimulation",
};

function el<K extends keyof HTMLElementTagNameMap>(tag: K, className?: string): HTMLElementTagNameMap[K] {
  const node = document.createElement(tag);
  if (className) node.className = className;
  return node;
}

function panel(title: string, controller: WidgetController, name: WidgetName): [HTMLElement, HTMLElement] {
  const section = el("section", "widget");
  const header = el("h2");
  const toggle = el("button", "collapse");
  toggle.textContent = controller.state.collapsed[name] ? "+" : "-";
  header.append(toggle, document.createTextNode(" " + title));
  const body = el("div", "widget-body");
  body.hidden = controller.state.collapsed[name];
  toggle.addEventListener("click", () => {
    controller.toggle(name);
    body.hidden = controller.state.collapsed[name];
    toggle.textContent = controller.state.collapsed[name] ? "+" : "-";
  });
  section.append(header, body);
  return [section, body];
}

function show(body: HTMLElement, lines: string[]): void {
  body.replaceChildren();
  const pre = el("pre");
  pre.textContent = lines.join("\n");
  body.append(pre);
}

export function boot(root: HTMLElement, engineUrl: string): WidgetController {
  const client = new EngineClient(new WebSocketTransport(engineUrl));
  const controller = new WidgetController(client);

  const editorSection = el("section", "widget");
  const editorHeader = el("h2");
  editorHeader.textContent = "Input program";
  const picker = el("select");
  const blank = el("option");
  blank.textContent = "examples...";
  blank.value = "";
  picker.append(blank);
  for (const key of Object.keys(EXAMPLES)) {
    const option = el("option");
    option.value = key;
    option.textContent = EXAMPLES[key].title;
    picker.append(option);
  }
  const editor = el("textarea");
  editor.rows = 16;
  const loadButton = el("button");
  loadButton.textContent = "Load";
  const status = el("div", "status");
  editorSection.append(editorHeader, picker, editor, loadButton, status);

  const [stepperSection, stepperBody] = panel(WIDGET_TITLES.runSemantics!, controller, "runSemantics");
  const [globalSection, globalBody] = panel(WIDGET_TITLES.globalView!, controller, "globalView");
  const [localSection, localBody] = panel(WIDGET_TITLES.localView!, controller, "localView");
  const [analysesSection, analysesBody] = panel(WIDGET_TITLES.analyses!, controller, "analyses");
  const [bisimSection, bisimBody] = panel(WIDGET_TITLES.bisimulation!, controller, "bisimulation");
  const refresh = el("button");
  refresh.textContent = "Refresh analyses";
  analysesSection.append(refresh);

  root.replaceChildren(editorSection, stepperSection, globalSection, localSection, analysesSection, bisimSection);

  function repaint(): void {
    show(status, renderParseStatus(controller.state));
    show(globalBody, controller.state.globalDiagram ? [controller.state.globalDiagram] : ["(no diagram yet)"]);
    show(localBody, controller.state.localDiagram ? [controller.state.localDiagram] : ["(no diagram yet)"]);
    show(analysesBody, renderAnalyses(controller.state));
    show(bisimBody, renderBisim(controller.state));
    stepperBody.replaceChildren();
    const pre = el("pre");
    pre.textContent = renderStepper(controller.state).join("\n");
    stepperBody.append(pre);
    for (const move of controller.state.enabledMoves) {
      const button = el("button", "move");
      button.textContent = `${move.action} [${move.edge}]`;
      button.addEventListener("click", () => {
        void controller.stepMove(move.edge).then(() => controller.refreshDiagrams()).then(repaint);
      });
      stepperBody.append(button);
    }
    const resetButton = el("button");
    resetButton.textContent = "Reset";
    resetButton.addEventListener("click", () => {
      void controller.reset().then(() => controller.refreshDiagrams()).then(repaint);
    });
    stepperBody.append(resetButton);
  }

  async function loadAndPaint(source: string): Promise<void> {
    await controller.loadSource(source);
    if (controller.state.parseStatus.kind === "ok") {
      await controller.refreshDiagrams();
    }
    repaint();
  }

  picker.addEventListener("change", () => {
    if (picker.value) {
      editor.value = EXAMPLES[picker.value].source;
      void loadAndPaint(editor.value);
    }
  });
  loadButton.addEventListener("click", () => void loadAndPaint(editor.value));
  refresh.addEventListener("click", () => void controller.refreshAnalyses().then(repaint));

  repaint();
  return controller;
}

if (typeof document !== "undefined" && document.getElementById("app")) {
  const params = new URLSearchParams(window.location.search);
  boot(document.getElementById("app")!, params.get("engine") ?? "ws://localhost:8765");
}
