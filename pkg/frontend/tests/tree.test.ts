import { describe, expect, it } from "vitest";

import { findFile, flattenTree } from "../src/tree.js";
import type { TreeResponse } from "../src/types.js";

const TREE: TreeResponse = {
  folders: [
    {
      id: 1, name: "hw1", url: "/hw1",
      folders: [
        { id: 2, name: "drafts", url: "/hw1/drafts", folders: [],
          files: [{ id: 11, name: "old.sp", url: "/hw1/drafts/old.sp" }] },
      ],
      files: [{ id: 10, name: "map.sp", url: "/hw1/map.sp" }],
    },
  ],
  files: [{ id: 12, name: "scratch.sp", url: "/scratch.sp" }],
};

describe("flattenTree", () => {
  it("walks folders depth-first with files after subfolders", () => {
    const rows = flattenTree(TREE);
    expect(rows.map((r) => [r.kind, r.name, r.depth])).toEqual([
      ["folder", "hw1", 0],
      ["folder", "drafts", 1],
      ["file", "old.sp", 2],
      ["file", "map.sp", 1],
      ["file", "scratch.sp", 0],
    ]);
  });

  it("keeps urls intact", () => {
    const rows = flattenTree(TREE);
    expect(rows.find((r) => r.name === "old.sp")?.url).toBe("/hw1/drafts/old.sp");
  });
});

describe("findFile", () => {
  it("finds nested and root files", () => {
    expect(findFile(TREE, 11)?.url).toBe("/hw1/drafts/old.sp");
    expect(findFile(TREE, 12)?.url).toBe("/scratch.sp");
    expect(findFile(TREE, 99)).toBeNull();
  });
});
