"""Small presentations shared by the tests."""

from chainring.presentation import Presentation

# Z/4 as Z/4[X,Y]/(2Y, Y^2, 2 - Y, X)
Z4 = Presentation(2, 2, 1, (0, 1), ((1, (1,)),))
# Z/4[Y]/(Y^2 - 2, 2Y)
PC = Presentation(2, 2, 2, (0, 1), ((2, (1,)),))
# F_4[Y]/(Y^2)
F4Y2 = Presentation(2, 1, 1, (1, 1, 1))
# Z/8 with Y = 2
Z8 = Presentation(2, 3, 2, (0, 1), ((1, (1,)),))

