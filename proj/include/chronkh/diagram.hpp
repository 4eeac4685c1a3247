#pragma once

#include <array>
#include <stdexcept>
#include <string>
#include <vector>

namespace chronkh {

struct MalformedInput : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct InvalidDiagram : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct InvalidBasepoint : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// One crossing of a PD code: four arc labels counterclockwise starting from
/// the incoming under-strand. arrowFlip reverses the surgery-arc decoration.
struct Crossing {
    std::array<int, 4> slots{};
    bool arrowFlip = false;
};

/// A basepoint: a marked arc (arcId >= 1), or a marked crossingless loop
/// (arcId == 0, loopIndex identifies which).
struct Basepoint {
    int componentId = 0;
    int arcId = 0;
    int loopIndex = -1;  // >= 0 only for free-loop basepoints
};

struct Circle;
struct ResolutionState;
struct SurgeryArc;

/// An oriented link diagram in PD notation, plus crossingless loops and
/// optional basepoints. Immutable after construction apart from arrow flips,
/// which are cube decorations rather than diagram data.
class PlanarDiagram {
public:
    /// Grammar: whitespace-separated `X(a,b,c,d)` terms and the directives
    /// `loops=k`, `basepoint=arcId` (arcId 0 marks the first free loop).
    /// `#` starts a comment running to the end of the line.
    static PlanarDiagram parse(const std::string& text);

    std::string render() const;

    int n() const { return static_cast<int>(crossings_.size()); }
    int arcCount() const { return arcCount_; }
    int freeLoops() const { return freeLoops_; }
    const std::vector<Crossing>& crossings() const { return crossings_; }
    const std::vector<Basepoint>& basepoints() const { return basepoints_; }

    /// Component ids: 0..#arc-components-1 for arc components (in order of
    /// their smallest arc), then one per free loop.
    int componentOf(int arc) const { return componentOf_.at(arc); }
    int componentCount() const { return componentCount_; }
    int nextArc(int arc) const { return succ_.at(arc); }

    /// +1 or -1 by the standard orientation rule.
    int crossingSign(int k) const { return signs_.at(k); }
    /// Slot (1 or 3) where the over-strand enters crossing k.
    int overInSlot(int k) const { return overIn_.at(k); }
    std::pair<int, int> crossingSigns() const;  // (nPlus, nMinus)

    PlanarDiagram mirror() const;

    void setArrowFlip(int k, bool flip) { crossings_.at(k).arrowFlip = flip; }
    void addBasepoint(int arcId);
    void clearBasepoints() { basepoints_.clear(); }

    /// Slot positions are encoded as 4*crossing + slot.
    int arcAtPos(int pos) const { return crossings_[pos / 4].slots[pos % 4]; }

    ResolutionState resolve(const std::vector<bool>& xi) const;
    SurgeryArc surgeryArc(const ResolutionState& state, int k) const;

private:
    std::vector<Crossing> crossings_;
    int arcCount_ = 0;
    int freeLoops_ = 0;
    std::vector<Basepoint> basepoints_;
    std::vector<int> componentOf_;  // arc -> component, index 0 unused
    std::vector<int> succ_;         // arc -> next arc along its component
    std::vector<int> signs_;        // per crossing
    std::vector<int> overIn_;       // per crossing: slot (1 or 3) of the incoming over-strand
    int componentCount_ = 0;

    void finalize();  // derive orientation roles, components, signs; validate
};

/// A circle of a resolved state, as the cyclic sequence of slot positions it
/// passes through. Entries at even indices enter a crossing, the following
/// odd entry leaves it; consecutive pairs (2i, 2i+1) are strand visits.
/// Free loops are represented by an empty sequence.
struct Circle {
    std::vector<int> seq;
    int minArc = 0;  // smallest arc label on the circle; free loops sort last

    int visitCount() const { return static_cast<int>(seq.size()) / 2; }
};

struct ResolutionState {
    std::vector<bool> xi;
    std::vector<Circle> circles;      // canonical order: ascending minArc, loops last
    std::vector<int> circleOfPos;     // slot position -> circle index
    std::vector<int> seqIndexOfPos;   // slot position -> index into circle seq

    int circleCount() const { return static_cast<int>(circles.size()); }
};

/// The surgery arc at a 0-smoothed crossing: tail and head strands of the
/// arrow decoration, with enough position data to classify faces.
struct SurgeryArc {
    bool isMerge = false;
    int crossing = 0;
    int tailCircle = 0, headCircle = 0;
    int tailVisit = 0, headVisit = 0;  // visit indices within the circles
    bool tailLeft = false, headLeft = false;  // arc endpoint on the left of the traversal
};

}  // namespace chronkh
