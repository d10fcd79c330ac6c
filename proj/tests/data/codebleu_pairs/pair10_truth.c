int wrap(int value)
{
	return helper(value, 0);
}
int helper(int a, int b)
{
	return a + b;
}
