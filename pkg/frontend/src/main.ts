import { ApiClient } from "./api.js";
import { apiBaseUrl } from "./config.js";
import { NavigatorController } from "./controller.js";
import { mount } from "./render.js";
import { deserializeSession } from "./session.js";

function bootstrap(): void {
    const root = document.getElementById("app");
    if (!root) throw new Error("missing #app container");

    const controller = new NavigatorController(new ApiClient(apiBaseUrl()));
    mount(root, controller);

    controller.subscribe(() => {
        const serialized = controller.serialized();
        if (window.location.hash.replace(/^#/, "") !== serialized) {
            history.replaceState(null, "", `#${serialized}`);
        }
    });

    if (window.location.hash.length > 1) {
        void controller.restore(deserializeSession(window.location.hash));
    }
}

document.addEventListener("DOMContentLoaded", bootstrap);
