// Minimal shell for the dashboard API: reads the location fragment, fetches
// /api/page and renders the panels in order.
(function () {
  "use strict";

  var pageEl = document.getElementById("page");
  var statusEl = document.getElementById("status");
  var inflight = null;

  function el(tag, attrs, text) {
    var node = document.createElement(tag);
    Object.keys(attrs || {}).forEach(function (k) { node.setAttribute(k, attrs[k]); });
    if (text !== undefined) node.textContent = text;
    return node;
  }

  function cell(term) {
    var td = el("td");
    if (!term) return td;
    if (term.link) {
      td.appendChild(el("a", { href: term.link }, term.value));
    } else if (term.type === "iri") {
      td.appendChild(el("a", { href: term.value, rel: "noreferrer" }, term.value));
    } else {
      td.textContent = term.value;
    }
    if (term.language) td.appendChild(el("sup", {}, term.language));
    return td;
  }

  function sortBy(table, column) {
    var body = table.tBodies[0];
    var rows = Array.prototype.slice.call(body.rows);
    var dir = table.dataset.sorted === String(column) ? -1 : 1;
    table.dataset.sorted = dir === 1 ? String(column) : "";
    rows.sort(function (a, b) {
      var x = a.cells[column] ? a.cells[column].textContent : "";
      var y = b.cells[column] ? b.cells[column].textContent : "";
      return dir * x.localeCompare(y, undefined, { numeric: true });
    });
    rows.forEach(function (r) { body.appendChild(r); });
  }

  function renderTable(panel) {
    var table = el("table");
    var head = table.createTHead().insertRow();
    panel.variables.forEach(function (v, i) {
      var th = el("th", {}, v);
      th.addEventListener("click", function () { sortBy(table, i); });
      head.appendChild(th);
    });
    var body = table.createTBody();
    if (panel.rows.length === 0) {
      var td = el("td", { colspan: String(Math.max(1, panel.variables.length)) },
                  "No results");
      body.insertRow().appendChild(td);
    }
    panel.rows.forEach(function (row) {
      var tr = body.insertRow();
      panel.variables.forEach(function (v) { tr.appendChild(cell(row[v])); });
    });
    return table;
  }

  function renderPanel(panel) {
    switch (panel.type) {
      case "heading": return el("h" + panel.level, {}, panel.text);
      case "rule": return el("hr");
      case "table": return renderTable(panel);
      case "graph": {
        var frame = el("iframe", {
          src: panel.iframe_url,
          sandbox: "allow-scripts allow-same-origin allow-popups",
          referrerpolicy: "no-referrer",
          loading: "lazy"
        });
        return frame;
      }
      case "missing-template": {
        var p = el("p", {}, "No template page " + panel.title + ". ");
        p.appendChild(el("a", { href: panel.create_url, rel: "noreferrer" },
                         "Create it on the wiki"));
        return p;
      }
      default:
        return el("div", { class: "error" }, panel.kind + ": " + panel.message);
    }
  }

  function load() {
    if (inflight) inflight.abort();
    inflight = new AbortController();
    statusEl.textContent = "loading";
    statusEl.className = "status";
    fetch("/api/page?fragment=" + encodeURIComponent(location.hash),
          { signal: inflight.signal })
      .then(function (res) { return res.json(); })
      .then(function (doc) {
        pageEl.textContent = "";
        statusEl.textContent = "";
        if (doc.error) {
          pageEl.appendChild(el("div", { class: "error" },
                                doc.error.kind + ": " + doc.error.message));
          return;
        }
        doc.panels.forEach(function (p) { pageEl.appendChild(renderPanel(p)); });
      })
      .catch(function (err) {
        if (err.name !== "AbortError") statusEl.textContent = String(err);
      });
  }

  window.addEventListener("hashchange", load);
  load();
})();
