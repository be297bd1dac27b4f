#pragma once

#include <string>

// Shared toy inputs used across suites.

namespace fixtures {

// Running example text and its parse landmarks.
inline const std::string kRunningText = "abaabab";

// Toy reference plus one aligned genome: an insertion of CAC after position
// 10, one substitution A->T, and a deletion of TCG.
inline const std::string kToyReference = "GATACATTGAATCAATCGACGGTTATGACGGCATATCGCCACATGATA";
inline const std::string kToyGenome = "GATACATTGACACATCAATCGACGGTTTTGACGGCATACCACATGATA";
inline const std::string kToyScriptLine = "g2\t10= 3ICAC 14= 1XT 10= 3D 10=";
inline const std::string kToyFasta =
    ">g1\nGATACATTGAATCAATCGACGGTTATGACGGCATATCGCCACATGATA\n"
    ">g2\nGATACATTGACACATCAATCGACGGTTTTGACGGCATACCACATGATA\n";
inline const std::string kToyAlignments = "g1\t48=\n" + kToyScriptLine + "\n";

}  // namespace fixtures
