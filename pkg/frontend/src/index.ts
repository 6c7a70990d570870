export * from "./protocol.js";
export * from "./transport.js";
export * from "./circuitModel.js";
export * from "./sceneModel.js";
export * from "./viewport.js";
export * from "./controls.js";
export * from "./branches.js";
export * from "./app.js";
