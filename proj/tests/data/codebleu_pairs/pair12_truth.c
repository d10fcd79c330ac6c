int getcount(void)
{
	return 42;
}
int reset(void)
{
	return 0;
}
