#pragma once

// Small instance texts shared by the test suites.

#include <string>

namespace inrc2::fixtures {

inline const std::string kScenario = R"(SCENARIO = n005w4

WEEKS = 4

SKILLS = 2
HeadNurse
Nurse

SHIFT_TYPES = 3
Early (2,5)
Late (2,3)
Night (4,5)

FORBIDDEN_SHIFT_TYPES_SUCCESSIONS
Early 0
Late 1 Early
Night 2 Early Late

CONTRACTS = 2
FullTime (15,22) (3,5) (2,3) 2 1
PartTime (7,11) (3,5) (3,5) 2 1

NURSES = 5
Patrick FullTime 2 HeadNurse Nurse
Andrea FullTime 2 HeadNurse Nurse
Stefaan PartTime 2 HeadNurse Nurse
Sara PartTime 1 Nurse
Nguyen FullTime 1 Nurse
)";

inline const std::string kWeek = R"(WEEK_DATA
n005w4

REQUIREMENTS
Early HeadNurse (1,1) (0,0) (0,0) (0,0) (0,0) (1,1) (0,0)
Early Nurse (1,2) (1,1) (1,1) (0,1) (1,1) (1,1) (0,1)
Late HeadNurse (1,1) (0,1) (1,1) (0,0) (0,0) (0,0) (0,0)
Late Nurse (1,1) (1,1) (0,1) (0,1) (1,1) (1,1) (1,1)
Night HeadNurse (0,0) (1,1) (0,0) (0,0) (1,1) (1,1) (0,0)
Night Nurse (0,1) (1,1) (1,1) (1,1) (1,1) (0,1) (1,1)

SHIFT_OFF_REQUESTS = 3
Sara Any Thu
Sara Night Sat
Stefaan Late Sat
)";

inline const std::string kHistory = R"(HISTORY
0 n005w4

NURSE_HISTORY
Patrick 0 0 Night 1 4 0
Andrea 0 0 Early 3 3 0
Stefaan 0 0 None 0 0 3
Sara 0 0 Late 1 4 0
Nguyen 0 0 None 0 0 1
)";

// A week-3 solution for the sample scenario.
inline const std::string kSolution = R"(SOLUTION
3 n005w4

ASSIGNMENTS = 10
Patrick Mon Late HeadNurse
Patrick Tue Night HeadNurse
Patrick Fri Early Nurse
Patrick Sat Early Nurse
Patrick Sun Late Nurse
Andrea Mon Early HeadNurse
Andrea Tue Late Nurse
Nguyen Fri Late Nurse
Nguyen Sat Late Nurse
Nguyen Sun Night Nurse
)";

// Two shifts and all consecutive limits set to 3, as used for the border
// evaluation tables.
inline const std::string kBorderScenario = R"(SCENARIO = n001w4
WEEKS = 4
SKILLS = 1
Nurse
SHIFT_TYPES = 2
Early (3,3)
Late (3,3)
FORBIDDEN_SHIFT_TYPES_SUCCESSIONS
Early 0
Late 1 Early
CONTRACTS = 1
FullTime (0,28) (3,3) (3,3) 4 0
NURSES = 1
Mary FullTime 1 Nurse
)";

}  // namespace inrc2::fixtures
