// Pure helpers over the /api/tree response; DOM rendering lives in app.ts.

import type { FileEntry, FolderNode, TreeResponse } from "./types.js";

export interface TreeRow {
  kind: "folder" | "file";
  id: number;
  name: string;
  url: string;
  depth: number;
}

/** Depth-first rows in display order: each folder, then its subtree, then
 * its files; root files come last. */
export function flattenTree(tree: TreeResponse): TreeRow[] {
  const rows: TreeRow[] = [];

  function visitFolder(node: FolderNode, depth: number): void {
    rows.push({ kind: "folder", id: node.id, name: node.name, url: node.url, depth });
    for (const sub of node.folders) visitFolder(sub, depth + 1);
    for (const file of node.files) {
      rows.push({ kind: "file", id: file.id, name: file.name, url: file.url, depth: depth + 1 });
    }
  }

  for (const folder of tree.folders) visitFolder(folder, 0);
  for (const file of tree.files) {
    rows.push({ kind: "file", id: file.id, name: file.name, url: file.url, depth: 0 });
  }
  return rows;
}

export function findFile(tree: TreeResponse, id: number): FileEntry | null {
  function inFolder(node: FolderNode): FileEntry | null {
    for (const f of node.files) if (f.id === id) return f;
    for (const sub of node.folders) {
      const hit = inFolder(sub);
      if (hit) return hit;
    }
    return null;
  }
  for (const f of tree.files) if (f.id === id) return f;
  for (const folder of tree.folders) {
    const hit = inFolder(folder);
    if (hit) return hit;
  }
  return null;
}
