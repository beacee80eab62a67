#pragma once

// Cubelet-level Rubik's Cube engine: canonical state, the 18 face turns,
// solvability checks, and conversions to sticker / factored representations.
//
// Cubelet numbering (fixed, documented in README):
//   corners cube1..cube8 = ULB, ULF, DLB, DLF, URF, URB, DRF, DRB
//   edges named edgePQ after the two adjacent corners cubeP/cubeQ, e.g.
//   edge12 = UL, edge24 = FL, edge34 = DL, edge13 = BL.
// A clockwise L turn cycles cube1 -> cube2 -> cube4 -> cube3 -> cube1.
//
// Face colors: Front=White, Up=Red, Right=Green, Back=Yellow, Down=Orange,
// Left=Blue. Centers never move.

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

namespace rcplan {

enum class Face : uint8_t { U = 0, D, L, R, F, B };
enum class Turn : uint8_t { CW90 = 0, CCW90, HALF };

constexpr int kNumFaces = 6;
constexpr int kNumMoves = 18;
constexpr int kNumCorners = 8;
constexpr int kNumEdges = 12;

struct Move {
    Face face;
    Turn turn;

    friend bool operator==(Move a, Move b) { return a.face == b.face && a.turn == b.turn; }
    friend bool operator!=(Move a, Move b) { return !(a == b); }
};

// Fixed move order U,Urev,U2,D,...,B2; ids 0..17.
int move_id(Move m);
Move move_from_id(int id);
Move inverse_move(Move m);
Face opposite_face(Face f);

// Notation exactly as in plans/datasets: U, Urev, U2, ...
std::string move_name(Move m);
// Case-insensitive; nullopt for unknown tokens.
std::optional<Move> move_from_name(const std::string& name);

enum class ActionSetVariant : uint8_t { QUARTER_12, FULL_18 };

struct ActionSet {
    ActionSetVariant variant = ActionSetVariant::FULL_18;

    static ActionSet quarter12() { return {ActionSetVariant::QUARTER_12}; }
    static ActionSet full18() { return {ActionSetVariant::FULL_18}; }

    // Moves in the fixed successor order.
    const std::vector<Move>& moves() const;
    bool contains(Move m) const;
    int size() const { return variant == ActionSetVariant::QUARTER_12 ? 12 : 18; }
    const char* name() const { return variant == ActionSetVariant::QUARTER_12 ? "quarter12" : "full18"; }

    friend bool operator==(ActionSet a, ActionSet b) { return a.variant == b.variant; }
    friend bool operator!=(ActionSet a, ActionSet b) { return !(a == b); }
};

std::optional<ActionSet> action_set_from_string(const std::string& s);

// corner_perm[slot] = cubie occupying that slot; corner_ori[slot] in {0,1,2}
// counts clockwise twists of the cubie's U/D-colored sticker relative to the
// slot's reference facelet. Edge orientation is the standard flip bit.
struct CubeState {
    std::array<uint8_t, kNumCorners> corner_perm;
    std::array<uint8_t, kNumCorners> corner_ori;
    std::array<uint8_t, kNumEdges> edge_perm;
    std::array<uint8_t, kNumEdges> edge_ori;

    static CubeState solved();
    bool is_solved() const;

    friend bool operator==(const CubeState& a, const CubeState& b) {
        return a.corner_perm == b.corner_perm && a.corner_ori == b.corner_ori &&
               a.edge_perm == b.edge_perm && a.edge_ori == b.edge_ori;
    }
    friend bool operator!=(const CubeState& a, const CubeState& b) { return !(a == b); }
};

// 128-bit packing for hash sets / closed lists.
struct PackedState {
    uint64_t hi = 0, lo = 0;
    friend bool operator==(PackedState a, PackedState b) { return a.hi == b.hi && a.lo == b.lo; }
};

struct PackedStateHash {
    size_t operator()(PackedState p) const {
        uint64_t x = p.hi * 0x9e3779b97f4a7c15ULL ^ p.lo;
        x ^= x >> 32;
        x *= 0xd6e8feb86659fd93ULL;
        x ^= x >> 32;
        return static_cast<size_t>(x);
    }
};

PackedState pack_state(const CubeState& s);

// Move effect as a delta state: cp[slot] = source slot whose occupant moves
// here, co[slot] = twist added on arrival (same layout for edges).
struct MoveTable {
    std::array<uint8_t, kNumCorners> cp, co;
    std::array<uint8_t, kNumEdges> ep, eo;
};

const MoveTable& move_table(Move m);

CubeState apply_move(const CubeState& s, Move m);
CubeState apply_plan(const CubeState& s, std::span<const Move> plan);

// True iff the state is reachable by legal moves: orientation sums vanish
// (mod 3 / mod 2) and corner/edge permutation parities agree.
bool check_solvability(const CubeState& s);

// ---------------------------------------------------------------------------
// Sticker representation (54 facelets, faces serialized U,L,F,R,B,D,
// row-major on the standard unfolded net).

enum class Color : uint8_t { White = 0, Red, Green, Yellow, Orange, Blue };

char color_code(Color c);                     // W,R,G,Y,O,B
std::optional<Color> color_from_code(char c);
const char* color_word(Color c);              // "white", ...
std::optional<Color> color_from_word(const std::string& w);

struct StickerArray {
    std::array<Color, 54> facelets;

    friend bool operator==(const StickerArray& a, const StickerArray& b) {
        return a.facelets == b.facelets;
    }
};

struct InvalidArray : std::runtime_error {
    using std::runtime_error::runtime_error;
};

StickerArray to_stickers(const CubeState& s);
CubeState from_stickers(const StickerArray& arr);  // throws InvalidArray

// Sticker index for (face, row, col) in the serialized order; faces in net
// order U,L,F,R,B,D; row/col are centered in -1..+1 (0,0 is the center).
int sticker_index(Face f, int row, int col);
Color face_color(Face f);

// ---------------------------------------------------------------------------
// Factored representation: 20 (occupant, orientation) variables,
// corners first then edges.

struct FactoredState {
    std::array<std::pair<uint8_t, uint8_t>, 20> cubies;

    friend bool operator==(const FactoredState& a, const FactoredState& b) {
        return a.cubies == b.cubies;
    }
};

struct InvalidFactored : std::runtime_error {
    using std::runtime_error::runtime_error;
};

FactoredState to_factored(const CubeState& s);
CubeState from_factored(const FactoredState& f);  // throws InvalidFactored

// ---------------------------------------------------------------------------
// Names and geometry exposed for the PDDL codec.

// "cube1".."cube8" / "edge12" etc., by slot index.
const std::string& corner_predicate(int slot);
const std::string& edge_predicate(int slot);
int corner_slot_from_predicate(const std::string& name);  // -1 if unknown
int edge_slot_from_predicate(const std::string& name);

// Axes: 0 = U/D, 1 = R/L, 2 = F/B. Corner predicate parameters are the
// colors along axes (0,2,1) for every slot; edge parameter axes vary by slot.
std::array<int, 3> corner_param_axes(int slot);
std::array<int, 2> edge_param_axes(int slot);

// A quarter turn of `f` exchanges colors between these two axes; half turns
// leave axes in place.
std::pair<int, int> swapped_axes(Face f);

// Color shown by `s` on the given param axis of the given slot (what the
// PDDL predicate arguments are).
std::array<Color, 3> corner_param_colors(const CubeState& s, int slot);
std::array<Color, 2> edge_param_colors(const CubeState& s, int slot);

// Inverse of the two functions above over a full assignment; throws
// InvalidArray for color combinations that name no real cubie, duplicate
// cubies, or mirrored placements.
CubeState state_from_cubelet_colors(
    const std::array<std::array<Color, 3>, kNumCorners>& corners,
    const std::array<std::array<Color, 2>, kNumEdges>& edges);

// ---------------------------------------------------------------------------
// JSON serialization: {"corner_perm":[..],"corner_ori":[..],...} and a
// 54-element array of one-letter color codes.

nlohmann::json state_to_json(const CubeState& s);
CubeState state_from_json(const nlohmann::json& j);
nlohmann::json stickers_to_json(const StickerArray& a);
StickerArray stickers_from_json(const nlohmann::json& j);

}  // namespace rcplan
