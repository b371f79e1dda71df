#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "proxitop/cycles.hpp"
#include "proxitop/homotopy.hpp"
#include "proxitop/maps.hpp"
#include "proxitop/nerves.hpp"
#include "proxitop/persist.hpp"
#include "proxitop/space.hpp"

namespace proxitop::io {

// All loaders reject unknown keys and wrong value shapes with ParseError.
// Paths inside a file resolve relative to that file's directory.

/**
 * Space file: {"eps_spatial": real, "points": [{"id": int, "xy": [x, y],
 * "phi": [reals]?}], "eps_desc": real?}. Feature vectors are all-or-none
 * across points (MissingProbe otherwise).
 */
std::shared_ptr<const Space> load_space(const std::string& path);

/**
 * Map file: {"source": space, "target": space, "assignment": [[src_id,
 * dst_id], ...]} where each space is a file path or an inline space object
 * (inline spaces make glued outputs self-contained).
 */
SpaceMap load_map(const std::string& path);

struct HomotopyFile {
  DiscreteHomotopy homotopy;
  std::optional<Subset> rel;
};

/**
 * Homotopy file: {"source": space, "target": space, "time_grid": [reals],
 * "frames": [[[src_id, dst_id], ...], ...], "rel": [ids]?}. Every frame is
 * one assignment over the shared source/target pair.
 */
HomotopyFile load_homotopy(const std::string& path);

/**
 * Cycle file: {"vertices": [{"id": int, "xy": [x, y]}], "edges":
 * [{"from": int, "to": int, "polyline": [[x, y], ...]}]}.
 */
PathCycle load_cycle(const std::string& path);

// System file: {"cycles": [cycle objects]}.
CycleSystem load_system(const std::string& path);

/**
 * Cover file: {"universe": path to a space or system file, "elements":
 * [[ids...], ...]}. Over a system the universe is its welded graph and ids
 * are vertex indices; "elements": "cycles" shorthand takes each cycle's
 * welded vertex set as one element. Optional "phi": [[reals] per welded
 * vertex] with "eps_desc" equips a graph universe for descriptive checks.
 */
Cover load_cover(const std::string& path);

struct FrameSequence {
  double fps = 0.0;
  std::vector<FrameRecord> frames;
};

/**
 * Frame-sequence file: {"fps": real, "frames": [{"index": int, "t": real,
 * "shapes": [system object or path, ...]}]}.
 */
FrameSequence load_frames(const std::string& path);

// Whether the file parses as JSON with a top-level "cycles" key.
bool is_system_file(const std::string& path);

// Serialize a map as a self-contained map file (inline spaces).
std::string map_document(const SpaceMap& m);

void save_text(const std::string& path, const std::string& content);

}  // namespace proxitop::io
