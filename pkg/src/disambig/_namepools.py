"""Name/city/company pools for the synthetic corpus generator.

All entries are already in normalized form (uppercase, A-Z 0-9 and space
only) so generated records satisfy the Record invariants without another
normalization pass.
"""

LAST_NAMES = [
    "SMITH", "JOHNSON", "WILLIAMS", "BROWN", "JONES", "GARCIA", "MILLER",
    "DAVIS", "RODRIGUEZ", "MARTINEZ", "HERNANDEZ", "LOPEZ", "GONZALEZ",
    "WILSON", "ANDERSON", "THOMAS", "TAYLOR", "MOORE", "JACKSON", "MARTIN",
    "LEE", "PEREZ", "THOMPSON", "WHITE", "HARRIS", "SANCHEZ", "CLARK",
    "RAMIREZ", "LEWIS", "ROBINSON", "WALKER", "YOUNG", "ALLEN", "KING",
    "WRIGHT", "SCOTT", "TORRES", "NGUYEN", "HILL", "FLORES", "GREEN",
    "ADAMS", "NELSON", "BAKER", "HALL", "RIVERA", "CAMPBELL", "MITCHELL",
    "CARTER", "ROBERTS", "GOMEZ", "PHILLIPS", "EVANS", "TURNER", "DIAZ",
    "PARKER", "CRUZ", "EDWARDS", "COLLINS", "REYES", "STEWART", "MORRIS",
    "MORALES", "MURPHY", "COOK", "ROGERS", "GUTIERREZ", "ORTIZ", "MORGAN",
    "COOPER", "PETERSON", "BAILEY", "REED", "KELLY", "HOWARD", "RAMOS",
    "KIM", "COX", "WARD", "RICHARDSON", "WATSON", "BROOKS", "CHAVEZ",
    "WOOD", "JAMES", "BENNETT", "GRAY", "MENDOZA", "RUIZ", "HUGHES",
    "PRICE", "ALVAREZ", "CASTILLO", "SANDERS", "PATEL", "MYERS", "LONG",
    "ROSS", "FOSTER", "JIMENEZ", "MCFLY", "CLAYTONBROWN", "LIN", "LI",
    "CHEN", "WANG", "ZHANG", "OBRIEN", "FITZGERALD", "SCHNEIDER", "WEBER",
]

FIRST_NAMES = [
    "JAMES", "MARY", "ROBERT", "PATRICIA", "JOHN", "JENNIFER", "MICHAEL",
    "LINDA", "DAVID", "ELIZABETH", "WILLIAM", "BARBARA", "RICHARD",
    "SUSAN", "JOSEPH", "JESSICA", "THOMAS", "SARAH", "CHRISTOPHER",
    "KAREN", "CHARLES", "LISA", "DANIEL", "NANCY", "MATTHEW", "BETTY",
    "ANTHONY", "SANDRA", "MARK", "MARGARET", "DONALD", "ASHLEY",
    "STEVEN", "KIMBERLY", "ANDREW", "EMILY", "PAUL", "DONNA", "JOSHUA",
    "MICHELLE", "KENNETH", "CAROL", "KEVIN", "AMANDA", "BRIAN", "MELISSA",
    "GEORGE", "DEBORAH", "TIMOTHY", "STEPHANIE", "RONALD", "REBECCA",
    "JASON", "SHARON", "EDWARD", "LAURA", "JEFFREY", "CYNTHIA", "RYAN",
    "EMMETT", "JEN", "WEI", "MING", "AKIRA", "PRIYA", "CHRIS",
]

MIDDLE_NAMES = [
    "LEE", "MARIE", "ANN", "LYNN", "GRACE", "JAMES", "ALAN", "JEAN",
    "ROSE", "MAY", "RAY", "JAY", "LOU", "DEAN", "PAUL", "JOHN", "KAY",
    "LATHROP", "XIAO", "HARUKI", "DEV",
]

CITIES = [
    "NEW YORK", "LOS ANGELES", "CHICAGO", "HOUSTON", "PHOENIX",
    "PHILADELPHIA", "SAN ANTONIO", "SAN DIEGO", "DALLAS", "SAN JOSE",
    "AUSTIN", "BOSTON", "SEATTLE", "DENVER", "PORTLAND", "ATLANTA",
    "MIAMI", "OAKLAND", "MINNEAPOLIS", "CLEVELAND", "PITTSBURGH",
    "CINCINNATI", "SAINT LOUIS", "RALEIGH", "MADISON", "HILL VALLEY",
    "PALO ALTO", "CAMBRIDGE", "BERKELEY", "PRINCETON", "ANN ARBOR",
    "MELBOURNE", "MUNICH", "ZURICH", "TAIPEI", "OSAKA", "SHENZHEN",
]

COMPANIES = [
    "SCIENCE SOLUTIONS", "ACME LABS", "GENERAL DYNAMICS", "APEX MATERIALS",
    "NORTHSTAR SEMICONDUCTOR", "BLUE RIVER BIOTECH", "QUANTUM WORKS",
    "PACIFIC INSTRUMENTS", "UNITED POLYMERS", "FIRST LIGHT OPTICS",
    "HELIX PHARMA", "IRONWOOD SYSTEMS", "CASCADE ENERGY", "DELTA MOTORS",
    "SUMMIT AVIONICS", "3M COMPANY", "ORCHARD COMPUTING", "VERTEX FOUNDRY",
    "CRESCENT CHEMICAL", "ATLAS ROBOTICS", "EVERGREEN AGRITECH",
    "SWINBURNE UNIVERSITY OF TECHNOLOGY", "THE UNIVERSITY OF MELBOURNE",
]

COMPANY_SUFFIXES = ["PTY LTD", "INC", "LLC", "GMBH", "CORP", "CO"]

# Letter+2digit+letter codes, the shape of real IPC subgroups.
IPC_CODES = [
    "A01B", "A10C", "A10D", "A11E", "A23L", "A61K", "A61P", "B01D",
    "B23K", "B29C", "B60R", "B62D", "C02F", "C07C", "C07D", "C08F",
    "C09K", "C12N", "C12Q", "C22C", "D01F", "D21H", "E02D", "E04B",
    "E21B", "F01N", "F02M", "F16D", "F16H", "F25B", "G01N", "G02B",
    "G03C", "G05B", "G06F", "G06N", "G06Q", "G08G", "G09G", "G11C",
    "H01L", "H01M", "H02J", "H03K", "H04B", "H04L", "H04N", "H05K",
]
